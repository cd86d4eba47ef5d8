//! Roll-call style records: Yea/Nay/Absent tokens mapped to spins, members
//! with low participation dropped, then learned.
//! The votes are synthetic: two blocs plus one member who rarely shows up.

use greedy_mrf::dataset::parse_csv;
use greedy_mrf::{learn_structure, DistributionSource, IngestOptions, LearnerConfig};

fn main() -> greedy_mrf::Result<()> {
    let members = ["a1", "a2", "a3", "b1", "b2", "rare"];
    let mut text = members.join(",") + "\n";
    for r in 0u32..600 {
        let h = r.wrapping_mul(2_654_435_761);
        let bloc_a = h >> 7 & 1 == 1;
        let bloc_b = if h >> 19 & 3 == 0 { bloc_a } else { !bloc_a };
        let vote = |yes: bool, flip: bool| if yes ^ flip { "Yea" } else { "Nay" };
        let row = [
            vote(bloc_a, false),
            vote(bloc_a, r % 11 == 0),
            vote(bloc_a, r % 13 == 0),
            vote(bloc_b, false),
            vote(bloc_b, r % 7 == 0),
            if r % 5 == 0 {
                vote(bloc_b, false)
            } else {
                "Absent"
            },
        ];
        text += &(row.join(",") + "\n");
    }

    let opts = IngestOptions {
        map: vec![
            ("Yea".into(), "+1".into()),
            ("Nay".into(), "-1".into()),
            ("Absent".into(), "-1".into()),
        ],
        missing: Some("Absent".into()),
        participation: Some(0.75),
        ..Default::default()
    };
    let data = parse_csv(&text, &opts)?;
    println!("kept {:?} over {} votes", data.names(), data.n());

    let result = learn_structure(&DistributionSource::from(&data), &LearnerConfig::new(0.05))?;
    for (u, v) in result.graph.edges() {
        println!("{} -- {}", data.names()[u], data.names()[v]);
    }
    Ok(())
}
