#![allow(dead_code)]

use num_bigint::BigInt;
use radii::verify::Grid;
use radii::{Rational, TheoremId};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Twenty `(parameter, α)` points inside each theorem's hypothesis.
pub fn grid20(theorem: TheoremId) -> Vec<(Rational, Rational)> {
    let zero = q(0, 1);
    let with_zero_alpha = |values: Vec<Rational>| {
        values
            .into_iter()
            .map(|v| (v, zero.clone()))
            .collect::<Vec<_>>()
    };
    let points = match theorem {
        TheoremId::T1 => {
            let nus = [q(-2, 5), q(-1, 5), q(0, 1), q(1, 5), q(2, 5)];
            let alphas = [q(-1, 2), q(0, 1), q(1, 1), q(3, 1)];
            nus.iter()
                .flat_map(|n| alphas.iter().map(move |a| (n.clone(), a.clone())))
                .collect()
        }
        TheoremId::T2 => with_zero_alpha(Grid::interior(q(-1, 2), q(1, 2), 20).points()),
        TheoremId::T3 | TheoremId::T5 => {
            let mut v = Grid::interior(q(-1, 2), q(0, 1), 10).points();
            v.extend(Grid::interior(q(0, 1), q(1, 1), 10).points());
            with_zero_alpha(v)
        }
        TheoremId::T4 | TheoremId::T8 | TheoremId::T9 => {
            with_zero_alpha(Grid::parse("-1/2:1/2:1/19").unwrap().points())
        }
        TheoremId::T6 | TheoremId::T7 => {
            with_zero_alpha(Grid::parse("-3/4:35/4:1/2").unwrap().points())
        }
    };
    assert_eq!(points.len(), 20, "{theorem} grid");
    points
}
