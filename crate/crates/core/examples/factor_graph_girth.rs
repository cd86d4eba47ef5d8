use greedy_mrf::generators::{complete_dary_tree, cycle, grid};
use greedy_mrf::models::{factor_graph, girth, maximal_cliques};

fn main() -> greedy_mrf::Result<()> {
    for (name, g) in [
        ("grid:4", grid(4)?),
        ("cycle:7", cycle(7)?),
        ("tree:2:3", complete_dary_tree(2, 3)?),
    ] {
        let fg = factor_graph(&g);
        println!(
            "{name}: girth {:?}, factor graph girth {:?}, {} maximal cliques, max degree {}",
            girth(&g),
            girth(&fg),
            maximal_cliques(&g).len(),
            g.max_degree()
        );
    }
    Ok(())
}
