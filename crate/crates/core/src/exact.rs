//! Exact characteristic polynomials and certified real-root isolation.
//!
//! This is the reference path for the eigensolver: `det(xI − A)` is expanded
//! with integer arithmetic, split into square-free factors over ℚ, and each
//! factor's roots are isolated with Sturm sequences and refined by exact
//! rational bisection. No floating point is involved until the final
//! conversion of each isolated root.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::graph::Graph;

/// Largest order accepted by [`characteristic_polynomial`]; the expansion is
/// exponential in `n`.
pub const MAX_ORDER: usize = 16;

/// Dense polynomial over ℚ, coefficients from the constant term up.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Poly(Vec<BigRational>);

impl Poly {
    fn from_ints(c: &[BigInt]) -> Self {
        let mut p = Poly(c.iter().cloned().map(BigRational::from_integer).collect());
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &BigRational {
        self.0.last().expect("nonzero polynomial")
    }

    fn monic(&self) -> Self {
        let l = self.lead().clone();
        Poly(self.0.iter().map(|c| c / &l).collect())
    }

    fn derivative(&self) -> Self {
        let mut p = Poly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(k.into()))
                .collect(),
        );
        p.trim();
        p
    }

    fn sub(&self, other: &Poly) -> Self {
        let len = self.0.len().max(other.0.len());
        let zero = BigRational::zero();
        let mut p = Poly(
            (0..len)
                .map(|k| self.0.get(k).unwrap_or(&zero) - other.0.get(k).unwrap_or(&zero))
                .collect(),
        );
        p.trim();
        p
    }

    fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero());
        let mut rem = self.clone();
        let dd = divisor.degree();
        if rem.is_zero() || rem.degree() < dd {
            return (Poly(vec![]), rem);
        }
        let mut quot = vec![BigRational::zero(); rem.degree() - dd + 1];
        while !rem.is_zero() && rem.degree() >= dd {
            let shift = rem.degree() - dd;
            let factor = rem.lead() / divisor.lead();
            for (k, c) in divisor.0.iter().enumerate() {
                rem.0[k + shift] -= &factor * c;
            }
            quot[shift] = factor;
            rem.trim();
        }
        let mut q = Poly(quot);
        q.trim();
        (q, rem)
    }

    fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn eval(&self, x: &BigRational) -> BigRational {
        self.0
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }
}

/// Integer coefficients of `det(xI − A(G))`, constant term first.
///
/// Expands the determinant row by row over subsets of used columns, so every
/// permutation term is accounted for exactly once with its sign.
pub fn characteristic_polynomial(g: &Graph) -> Vec<BigInt> {
    let n = g.order();
    assert!(n <= MAX_ORDER, "exact expansion limited to n <= {MAX_ORDER}");
    let full = 1usize << n;
    let mut table: Vec<Option<Vec<BigInt>>> = vec![None; full];
    table[0] = Some(vec![BigInt::one()]);
    for mask in 0..full {
        let Some(current) = table[mask].take() else {
            continue;
        };
        let row = mask.count_ones() as usize;
        if row == n {
            table[mask] = Some(current);
            continue;
        }
        for col in (0..n).filter(|c| mask >> c & 1 == 0) {
            // entry of xI − A at (row, col): x on the diagonal, −a_rc elsewhere
            let higher_used = (mask >> (col + 1)).count_ones();
            let sign = if higher_used % 2 == 0 { 1 } else { -1 };
            let term: Vec<BigInt> = if row == col {
                std::iter::once(BigInt::zero())
                    .chain(current.iter().cloned())
                    .collect()
            } else if g.has_edge(row, col) {
                current.iter().map(|c| -c).collect()
            } else {
                continue;
            };
            let slot = table[mask | 1 << col].get_or_insert_with(Vec::new);
            if slot.len() < term.len() {
                slot.resize(term.len(), BigInt::zero());
            }
            for (s, t) in slot.iter_mut().zip(term) {
                *s += t * sign;
            }
        }
    }
    let mut coeffs = table[full - 1].take().unwrap_or_default();
    coeffs.resize(n + 1, BigInt::zero());
    coeffs
}

/// Yun's square-free factorisation: `(factor, multiplicity)` pairs, factors monic.
fn square_free_factors(f: &Poly) -> Vec<(Poly, usize)> {
    let f = f.monic();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.div_rem(&a0).0;
    let c = df.div_rem(&a0).0;
    let mut d = c.sub(&b.derivative());
    let mut out = Vec::new();
    let mut i = 1;
    while b.degree() > 0 {
        let a = b.gcd(&d);
        let next_b = b.div_rem(&a).0;
        let next_c = d.div_rem(&a).0;
        if a.degree() > 0 {
            out.push((a, i));
        }
        d = next_c.sub(&next_b.derivative());
        b = next_b;
        i += 1;
    }
    out
}

fn sturm_chain(p: &Poly) -> Vec<Poly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(Poly(r.0.iter().map(|c| -c).collect()));
    }
    chain
}

fn sign_variations(chain: &[Poly], x: &BigRational) -> usize {
    let signs: Vec<i8> = chain
        .iter()
        .map(|p| {
            let v = p.eval(x);
            if v.is_zero() {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            }
        })
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

fn dyadic(num: i64, log2_den: u32) -> BigRational {
    BigRational::new(num.into(), BigInt::one() << log2_den)
}

/// Real roots of a square-free polynomial, ascending, each to within `2^-52`
/// of the interval width it started from.
fn isolate_roots(p: &Poly) -> Vec<f64> {
    if p.degree() == 0 {
        return vec![];
    }
    let chain = sturm_chain(p);
    let lead = p.lead().abs();
    // Cauchy bound, rounded up to an integer so endpoints stay simple.
    let bound = p.0[..p.degree()]
        .iter()
        .map(|c| c.abs() / &lead)
        .fold(BigRational::zero(), |m, x| if x > m { x } else { m })
        + BigRational::from_integer(2.into());
    let bound = BigRational::from_integer(bound.ceil().to_integer());

    let mut roots = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        let count = sign_variations(&chain, &lo) - sign_variations(&chain, &hi);
        match count {
            0 => {}
            1 => roots.push(refine(p, lo, hi)),
            _ => {
                let two = BigRational::from_integer(2.into());
                let mut mid = (&lo + &hi) / &two;
                let mut k = 2;
                while p.eval(&mid).is_zero() {
                    mid = &lo + (&hi - &lo) * (BigRational::one() / &two + dyadic(1, k));
                    k += 1;
                }
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    roots.sort_by(f64::total_cmp);
    roots
}

/// Bisects `(lo, hi]`, which holds exactly one simple root and `p(lo) ≠ 0`.
fn refine(p: &Poly, mut lo: BigRational, mut hi: BigRational) -> f64 {
    let two = BigRational::from_integer(2.into());
    let lo_positive = p.eval(&lo).is_positive();
    let width_target = dyadic(1, 60);
    while &hi - &lo > width_target {
        let mid = (&lo + &hi) / &two;
        let v = p.eval(&mid);
        if v.is_zero() {
            return mid.to_f64().unwrap();
        }
        if v.is_positive() == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    ((lo + hi) / two).to_f64().unwrap()
}

/// All adjacency eigenvalues with multiplicity, non-increasing, from the exact
/// characteristic polynomial.
pub fn exact_eigenvalues(g: &Graph) -> Vec<f64> {
    let f = Poly::from_ints(&characteristic_polynomial(g));
    let mut values = Vec::with_capacity(g.order());
    for (factor, mult) in square_free_factors(&f) {
        for r in isolate_roots(&factor) {
            values.extend(std::iter::repeat_n(r, mult));
        }
    }
    values.sort_by(|a, b| b.total_cmp(a));
    values
}
