//! Sturm sequences, real-root isolation and exact window tests.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::exactpoly::{q_int, ExactPoly, Q};
use crate::arith;

/// Sturm sequence of a nonzero polynomial.
#[derive(Clone, Debug)]
pub struct Sturm {
    seq: Vec<ExactPoly>,
}

impl Sturm {
    pub fn new(p: &ExactPoly) -> Self {
        let mut seq = vec![p.primitive()];
        let d = p.derivative().primitive();
        if !d.is_zero() {
            seq.push(d);
            loop {
                let n = seq.len();
                let r = seq[n - 2].rem(&seq[n - 1]);
                if r.is_zero() {
                    break;
                }
                seq.push(r.neg().primitive());
            }
        }
        Sturm { seq }
    }

    fn variations(signs: impl Iterator<Item = i32>) -> usize {
        let mut last = 0;
        let mut v = 0;
        for s in signs {
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub fn variations_at(&self, x: &Q) -> usize {
        Self::variations(self.seq.iter().map(|p| p.sign_at(x)))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::variations(self.seq.iter().map(|p| {
            let s = if p.lead().is_positive() { 1 } else { -1 };
            if positive || p.deg() % 2 == 0 {
                s
            } else {
                -s
            }
        }))
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count_half_open(&self, a: &Q, b: &Q) -> usize {
        if a >= b {
            return 0;
        }
        self.variations_at(a) - self.variations_at(b)
    }

    /// Number of distinct real roots.
    pub fn count_real(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }

    pub fn poly(&self) -> &ExactPoly {
        &self.seq[0]
    }
}

/// Distinct real roots of `p` in the closed interval `[a, b]`.
pub fn count_roots_closed(p: &ExactPoly, a: &Q, b: &Q) -> usize {
    let s = Sturm::new(p);
    let mut n = s.count_half_open(a, b);
    if p.eval(a).is_zero() {
        n += 1;
    }
    n
}

/// A closed rational interval containing exactly one real root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootEnclosure {
    pub lo: Q,
    pub hi: Q,
}

impl RootEnclosure {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }
    pub fn width(&self) -> Q {
        &self.hi - &self.lo
    }
}

/// Integer bound on the absolute value of every complex root.
pub fn root_bound(p: &ExactPoly) -> Q {
    let l = p.lead().abs();
    let m = p
        .coeffs()
        .iter()
        .take(p.coeffs().len().saturating_sub(1))
        .map(|c| c.abs() / &l)
        .max()
        .unwrap_or_else(Q::zero);
    Q::from_integer((m + Q::one()).ceil().to_integer())
}

/// Isolate the distinct real roots of `p`, in increasing order, each to
/// width at most `2^-bits`.
pub fn isolate_real_roots(p: &ExactPoly, bits: u32) -> Vec<RootEnclosure> {
    if p.deg() <= 0 {
        return vec![];
    }
    let sf = p.squarefree_part();
    let st = Sturm::new(&sf);
    let b = root_bound(&sf);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let c = st.count_half_open(&lo, &hi);
        if c == 0 {
            continue;
        }
        if c == 1 {
            out.push(refine(&sf, lo, hi, bits));
            continue;
        }
        let mid = (&lo + &hi) / q_int(2);
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// Sign of `sum c_i x^i` at `x = n / 2^k`, for integer `c`.
fn sign_at_dyadic(c: &[BigInt], n: &BigInt, k: u32) -> i32 {
    let d = c.len() - 1;
    let mut acc = BigInt::zero();
    for (i, ci) in c.iter().enumerate().rev() {
        acc = acc * n + (ci << (k as usize * (d - i)));
    }
    match acc.sign() {
        num_bigint::Sign::Plus => 1,
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
    }
}

/// Shrink `(lo, hi]`, known to hold exactly one simple root of the
/// squarefree `p`, to width `2^-bits`.
fn refine(p: &ExactPoly, lo: Q, hi: Q, bits: u32) -> RootEnclosure {
    if p.eval(&hi).is_zero() {
        return RootEnclosure { lo: hi.clone(), hi };
    }
    let c = match p.primitive().to_integers() {
        Some(c) => c,
        None => return refine_rational(p, lo, hi, bits),
    };
    let k = bits;
    let scale = |x: &Q| -> Option<BigInt> {
        let v = x * Q::from_integer(BigInt::one() << k);
        v.is_integer().then(|| v.to_integer())
    };
    let (mut nl, mut nh) = match (scale(&lo), scale(&hi)) {
        (Some(a), Some(b)) => (a, b),
        _ => return refine_rational(p, lo, hi, bits),
    };
    let s_hi = sign_at_dyadic(&c, &nh, k);
    let den = BigInt::one() << k;
    while &nh - &nl > BigInt::one() {
        let mid: BigInt = (&nl + &nh) >> 1usize;
        let s = sign_at_dyadic(&c, &mid, k);
        if s == 0 {
            let m = Q::new(mid, den);
            return RootEnclosure { lo: m.clone(), hi: m };
        }
        if s == s_hi {
            nh = mid;
        } else {
            nl = mid;
        }
    }
    RootEnclosure {
        lo: Q::new(nl, den.clone()),
        hi: Q::new(nh, den),
    }
}

fn refine_rational(p: &ExactPoly, mut lo: Q, mut hi: Q, bits: u32) -> RootEnclosure {
    let target = Q::new(BigInt::one(), BigInt::one() << bits);
    let s_hi = p.sign_at(&hi);
    while &hi - &lo > target {
        let mid = (&lo + &hi) / q_int(2);
        let s = p.sign_at(&mid);
        if s == 0 {
            return RootEnclosure {
                lo: mid.clone(),
                hi: mid,
            };
        }
        if s == s_hi {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    RootEnclosure { lo, hi }
}

/// Rational bounds `lo <= 2 sqrt(q) <= hi` with `hi - lo <= 2^-k`;
/// equal when `q` is a perfect square.
pub fn two_sqrt_bounds(q: u64, k: u32) -> (Q, Q) {
    let scaled = BigInt::from(q) * 4u32 * (BigInt::one() << (2 * k));
    let r = arith::isqrt_big(&scaled);
    let den = BigInt::one() << k;
    let lo = Q::new(r.clone(), den.clone());
    if &r * &r == scaled {
        (lo.clone(), lo)
    } else {
        (lo, Q::new(r + 1, den))
    }
}

/// True iff every root of `h` is real and lies in `[-2 sqrt(q), 2 sqrt(q)]`.
pub fn is_weil_valid(h: &ExactPoly, q: u64) -> bool {
    if h.is_zero() {
        return false;
    }
    if h.deg() == 0 {
        return true;
    }
    let mut s = h.squarefree_part();
    let qq = BigInt::from(q);
    if arith::is_square_big(&qq) {
        let c = q_int(arith::isqrt_big(&qq) * 2);
        for r in [c.clone(), -c] {
            if s.eval(&r).is_zero() {
                s = s.divrem(&ExactPoly::new(vec![-r.clone(), Q::one()])).0;
            }
        }
    } else {
        let w = ExactPoly::new(vec![q_int(-4 * q as i64), Q::zero(), Q::one()]);
        let (quo, rem) = s.divrem(&w);
        if rem.is_zero() {
            s = quo;
        }
    }
    let n = match s.degree() {
        Some(0) | None => return true,
        Some(n) => n,
    };
    let st = Sturm::new(&s);
    if st.count_real() != n {
        return false;
    }
    let mut k = 4;
    loop {
        let (lo, hi) = two_sqrt_bounds(q, k);
        let inner = st.count_half_open(&-lo.clone(), &lo) + usize::from(s.eval(&-lo.clone()).is_zero());
        if inner == n {
            return true;
        }
        let outer = st.count_half_open(&-hi.clone(), &hi);
        if outer < n || lo == hi {
            return false;
        }
        k += 4;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let p = ExactPoly::from_ints(&[-2, 0, 1]);
        let st = Sturm::new(&p);
        assert_eq!(st.count_real(), 2);
        assert_eq!(st.count_half_open(&q_int(0), &q_int(2)), 1);
        assert_eq!(count_roots_closed(&ExactPoly::from_ints(&[-1, 1]), &q_int(1), &q_int(2)), 1);
    }

    #[test]
    fn isolation() {
        let p = ExactPoly::from_ints(&[6, -11, 6, -1]).neg();
        let r = isolate_real_roots(&p, 20);
        assert_eq!(r.len(), 3);
        for (e, want) in r.iter().zip([1, 2, 3]) {
            assert!(e.lo <= q_int(want) && q_int(want) <= e.hi);
        }
        let s = ExactPoly::from_ints(&[-2, 0, 1]);
        let r = isolate_real_roots(&s, 30);
        assert_eq!(r.len(), 2);
        assert!(r[1].width() <= Q::new(1.into(), BigInt::one() << 30));
    }

    #[test]
    fn weil_examples() {
        assert!(is_weil_valid(&ExactPoly::from_ints(&[2, 1]), 2));
        assert!(!is_weil_valid(&ExactPoly::from_ints(&[-3, 1]), 2));
        assert!(is_weil_valid(&ExactPoly::from_ints(&[0, -8, 0, 10, 6, 1]), 2));
        assert!(is_weil_valid(&ExactPoly::from_ints(&[4, 1]).pow(3), 4));
        assert!(is_weil_valid(&ExactPoly::from_ints(&[-8, 0, 1]), 2));
        assert!(!is_weil_valid(&ExactPoly::from_ints(&[1, 0, 1]), 2));
        assert!(!is_weil_valid(&ExactPoly::from_ints(&[5, 1]), 4));
    }
}
