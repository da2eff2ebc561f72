use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

/// The class `d L* - sum_q e_q E_q*` in the Picard lattice of the blow-up.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorClass {
    pub d: i64,
    pub e: Vec<i64>,
}

impl DivisorClass {
    pub fn new(d: i64, e: Vec<i64>) -> Self {
        Self { d, e }
    }

    pub fn zero(m: usize) -> Self {
        Self::new(0, vec![0; m])
    }

    pub fn len(&self) -> usize {
        self.e.len()
    }

    pub fn is_empty(&self) -> bool {
        self.e.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.d == 0 && self.e.iter().all(|x| *x == 0)
    }

    /// Intersection product `d d' - sum e e'`.
    pub fn dot(&self, o: &Self) -> i64 {
        assert_eq!(self.e.len(), o.e.len(), "classes on different configurations");
        self.d * o.d - self.e.iter().zip(&o.e).map(|(a, b)| a * b).sum::<i64>()
    }

    pub fn square(&self) -> i64 {
        self.dot(self)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.d + o.d, self.e.iter().zip(&o.e).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::new(self.d * k, self.e.iter().map(|x| x * k).collect())
    }

    /// Coordinates in the basis `(L*, E_1*, ..., E_m*)`; the pairing in these
    /// coordinates is `diag(1, -1, ..., -1)`.
    pub fn basis_vector(&self) -> Vec<i64> {
        std::iter::once(self.d).chain(self.e.iter().map(|x| -x)).collect()
    }

    pub fn from_basis_vector(v: &[i64]) -> Self {
        Self::new(v[0], v[1..].iter().map(|x| -x).collect())
    }

    pub fn basis_vector_q(&self) -> Vec<BigRational> {
        self.basis_vector()
            .into_iter()
            .map(|x| BigRational::from_integer(x.into()))
            .collect()
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        if self.d != 0 {
            out.push_str(&match self.d {
                1 => "L".to_string(),
                -1 => "-L".to_string(),
                d => format!("{d}L"),
            });
        }
        for (i, e) in self.e.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let c = -e;
            let sign = if c < 0 {
                "-"
            } else if out.is_empty() {
                ""
            } else {
                "+"
            };
            let a = c.abs();
            if a == 1 {
                out.push_str(&format!("{sign}E{}", i + 1));
            } else {
                out.push_str(&format!("{sign}{a}E{}", i + 1));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}
