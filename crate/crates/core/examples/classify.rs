//! Nonresonance and the reducibility verdict on a small table of inputs.

use hypermono::classify::{nonresonant, reducibility, regular_holonomic};
use hypermono::exact::rat;
use hypermono::geometry::Configuration;
use hypermono::Parameter;

fn main() -> hypermono::Result<()> {
    let cases: Vec<(&str, Vec<Vec<i64>>, Parameter)> = vec![
        ("[1 2]", vec![vec![1, 2]], Parameter::rational(vec![rat(1, 3)])),
        ("square", vec![vec![1, 0, 1], vec![0, 1, 1]], Parameter::rational(vec![rat(1, 3), rat(1, 5)])),
        (
            "pyramid",
            vec![vec![1, 1, 1, 1, 1], vec![0, 1, 0, 1, 2], vec![0, 0, 1, 1, 2]],
            Parameter::rational(vec![rat(1, 3), rat(1, 5), rat(1, 7)]),
        ),
        ("pyramid, β = 0", vec![vec![1, 1, 1, 1, 1], vec![0, 1, 0, 1, 2], vec![0, 0, 1, 1, 2]], Parameter::zero(3)),
    ];
    for (name, rows, beta) in cases {
        let cfg = Configuration::from_rows(&rows)?;
        let v = reducibility(&cfg, &beta)?;
        println!(
            "{name:16} reducible: {:5}  (i {}, ii {}, iii {})  nonresonant: {}  regular holonomic: {}",
            v.reducible,
            v.condition_i,
            v.condition_ii,
            v.condition_iii,
            nonresonant(&cfg, &beta).is_nonresonant(),
            regular_holonomic(&cfg)
        );
        if v.one_dim_decomposition {
            println!("{:16} splits into invariant pieces {:?}", "", v.invariant_dims);
        }
    }
    Ok(())
}
