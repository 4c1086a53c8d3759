//! The unitriangular counterexample: in 2×2 matrices, 2f − g = 1 has a
//! solution (f, f²) for every f = [[1, n], [0, 1]].

use std::fmt;

use num_traits::{One, Zero};

use crate::realalg::{rat_literal, Rat};

#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix(pub [[Rat; 2]; 2]);

impl RatMatrix {
    pub fn identity() -> Self {
        RatMatrix([[Rat::one(), Rat::zero()], [Rat::zero(), Rat::one()]])
    }

    pub fn unitriangular(n: i64) -> Self {
        RatMatrix([[Rat::one(), Rat::from_integer(n.into())], [Rat::zero(), Rat::one()]])
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (x, y) = (&self.0, &o.0);
        let e = |i: usize, j: usize| &x[i][0] * &y[0][j] + &x[i][1] * &y[1][j];
        RatMatrix([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    pub fn scale(&self, k: &Rat) -> Self {
        RatMatrix(self.0.clone().map(|row| row.map(|x| x * k)))
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.0.clone();
        for (i, row) in out.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x -= &o.0[i][j];
            }
        }
        RatMatrix(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.0
                .iter()
                .map(|row| row.iter().map(|x| serde_json::Value::String(rat_literal(x))).collect())
                .collect(),
        )
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixPair {
    pub n: i64,
    pub f: RatMatrix,
    pub g: RatMatrix,
    pub verified: bool,
}

/// Pairs (f, f²) for n = 1..=n_max, each checked against 2f − g = 1 exactly.
pub fn matrix_counterexample(n_max: i64) -> Vec<MatrixPair> {
    let two = Rat::from_integer(2.into());
    (1..=n_max)
        .map(|n| {
            let f = RatMatrix::unitriangular(n);
            let g = f.mul(&f);
            let verified = f.scale(&two).sub(&g) == RatMatrix::identity();
            MatrixPair { n, f, g, verified }
        })
        .collect()
}
