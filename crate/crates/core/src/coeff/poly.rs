use std::fmt;
use std::ops::{Add, AddAssign, Mul};

/// Polynomial in `F2[U]`, stored as the sorted set of exponents with
/// coefficient one.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UPoly {
    exps: Vec<u32>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { exps: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn monomial(k: u32) -> Self {
        UPoly { exps: vec![k] }
    }

    /// Builds a polynomial from exponents, cancelling repeats in pairs.
    pub fn from_exponents<I: IntoIterator<Item = u32>>(exps: I) -> Self {
        let mut p = UPoly::zero();
        for e in exps {
            p += &UPoly::monomial(e);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    /// Lowest exponent present.
    pub fn valuation(&self) -> Option<u32> {
        self.exps.first().copied()
    }

    pub fn degree(&self) -> Option<u32> {
        self.exps.last().copied()
    }

    /// The single exponent when the polynomial is a monomial.
    pub fn as_monomial(&self) -> Option<u32> {
        match self.exps.as_slice() {
            [k] => Some(*k),
            _ => None,
        }
    }

    pub fn shifted(&self, k: u32) -> Self {
        UPoly {
            exps: self.exps.iter().map(|e| e + k).collect(),
        }
    }

    /// Reduction modulo `U^k`.
    pub fn truncated(&self, k: u32) -> Self {
        UPoly {
            exps: self.exps.iter().copied().filter(|&e| e < k).collect(),
        }
    }
}

impl AddAssign<&UPoly> for UPoly {
    fn add_assign(&mut self, other: &UPoly) {
        let mut out = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.exps, &other.exps);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        self.exps = out;
    }
}

impl Add<&UPoly> for &UPoly {
    type Output = UPoly;
    fn add(self, other: &UPoly) -> UPoly {
        let mut r = self.clone();
        r += other;
        r
    }
}

impl Mul<&UPoly> for &UPoly {
    type Output = UPoly;
    fn mul(self, other: &UPoly) -> UPoly {
        let mut r = UPoly::zero();
        for &e in &other.exps {
            r += &self.shifted(e);
        }
        r
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "0");
        }
        for (n, e) in self.exps.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            match e {
                0 => write!(f, "1")?,
                1 => write!(f, "U")?,
                _ => write!(f, "U^{e}")?,
            }
        }
        Ok(())
    }
}

/// Coefficient `U^u V^v` of a bigraded differential entry.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UVMonomial {
    pub u_exp: u32,
    pub v_exp: u32,
}

impl UVMonomial {
    pub fn new(u_exp: u32, v_exp: u32) -> Self {
        UVMonomial { u_exp, v_exp }
    }

    /// Effect on a bigrading `(gr_U, gr_V)`.
    pub fn act(&self, gr: (i64, i64)) -> (i64, i64) {
        (gr.0 - 2 * self.u_exp as i64, gr.1 - 2 * self.v_exp as i64)
    }

    pub fn times(&self, other: &UVMonomial) -> UVMonomial {
        UVMonomial::new(self.u_exp + other.u_exp, self.v_exp + other.v_exp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn addition_is_symmetric_difference() {
        let p = UPoly::from_exponents([0, 2, 5]);
        let q = UPoly::from_exponents([2, 3]);
        assert_eq!(&p + &q, UPoly::from_exponents([0, 3, 5]));
        assert!((&p + &p).is_zero());
    }

    #[test]
    fn product_and_truncation() {
        let p = UPoly::from_exponents([0, 1]);
        let sq = &p * &p;
        assert_eq!(sq, UPoly::from_exponents([0, 2]));
        assert_eq!(sq.truncated(2), UPoly::one());
        assert_eq!(UPoly::monomial(3).shifted(2), UPoly::monomial(5));
    }

    #[test]
    fn monomial_action_on_bigrading() {
        assert_eq!(UVMonomial::new(1, 0).act((1, -1)), (-1, -1));
        assert_eq!(UVMonomial::new(0, 1).act((1, -1)), (1, -3));
    }
}
