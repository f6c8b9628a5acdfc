//! Sparse multivariate polynomials over `Integer` or `Rational`.

use std::collections::hash_map::Entry;
use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

use super::monomial::Monomial;
use super::rational::{Integer, Rational};

/// Coefficient ring of a [`Poly`].
pub trait Coeff:
    Clone + fmt::Debug + fmt::Display + PartialEq + Eq + Zero + One + Send + Sync
{
    fn mul_ref(&self, other: &Self) -> Self;
    fn add_assign_ref(&mut self, other: &Self);
    fn neg_ref(&self) -> Self;
    fn from_integer(n: &Integer) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_integer(&Integer::from(n))
    }

    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        self.add_assign_ref(&a.mul_ref(b));
    }
}

impl Coeff for Integer {
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_integer(n: &Integer) -> Self {
        n.clone()
    }
}

impl Coeff for Rational {
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_integer(n: &Integer) -> Self {
        Rational::from_integer(n.clone())
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Poly<C: Coeff = Rational> {
    terms: FxHashMap<Monomial, C>,
}

impl<C: Coeff> Default for Poly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> Poly<C> {
    pub fn zero() -> Self {
        Poly {
            terms: FxHashMap::default(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn var(v: usize) -> Self {
        Self::term(Monomial::var(v), C::one())
    }

    /// `Σ coeffs[v]·x_v`.
    pub fn linear(coeffs: &[C]) -> Self {
        let mut p = Self::zero();
        for (v, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(v), c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    /// Terms in a deterministic order (by packed monomial).
    pub fn sorted_terms(&self) -> Vec<(Monomial, C)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_by_key(|t| t.0);
        v
    }

    pub fn coeff(&self, m: Monomial) -> C {
        self.terms.get(&m).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(*m, c);
        }
    }

    /// `self += k·other`.
    pub fn add_scaled(&mut self, other: &Self, k: &C) {
        if k.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(*m, &c.mul_ref(k));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.add_assign(other);
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.add_scaled(other, &C::one().neg_ref());
        r
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg_ref())
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        self.map_coeffs(|c| c.mul_ref(k))
    }

    pub fn map_coeffs(&self, f: impl Fn(&C) -> C) -> Self {
        let mut r = Self::zero();
        r.terms.reserve(self.terms.len());
        for (m, c) in &self.terms {
            let c = f(c);
            if !c.is_zero() {
                r.terms.insert(*m, c);
            }
        }
        r
    }

    /// Multiplies every monomial by `m`.
    pub fn shift(&self, m: Monomial) -> Self {
        let mut r = Self::zero();
        r.terms.reserve(self.terms.len());
        for (k, c) in &self.terms {
            r.terms.insert(k.mul(m), c.clone());
        }
        r
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.len() == 1 {
            let (m, c) = small.terms.iter().next().unwrap();
            let mut r = Self::zero();
            r.terms.reserve(large.len());
            for (k, d) in &large.terms {
                r.terms.insert(k.mul(*m), d.mul_ref(c));
            }
            return r;
        }
        let mut acc: FxHashMap<Monomial, C> = FxHashMap::default();
        acc.reserve(large.len() * 2);
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                match acc.entry(ma.mul(*mb)) {
                    Entry::Occupied(mut e) => e.get_mut().add_mul_assign(ca, cb),
                    Entry::Vacant(e) => {
                        e.insert(ca.mul_ref(cb));
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Poly { terms: acc }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn involves(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// Constant term.
    pub fn constant_term(&self) -> C {
        self.coeff(Monomial::ONE)
    }

    /// Splits by powers of `v`: `self = Σ_i out[i]·v^i`, with `v` absent from each `out[i]`.
    pub fn coefficients_in(&self, v: usize) -> Vec<Self> {
        let deg = self.degree_in(v) as usize;
        let mut out = vec![Self::zero(); deg + 1];
        for (m, c) in &self.terms {
            out[m.exponent(v) as usize]
                .terms
                .insert(m.without(v), c.clone());
        }
        out
    }

    /// Substitutes `v ↦ image`, where `image` may be any polynomial.
    pub fn compose_var(&self, v: usize, image: &Self) -> Self {
        let parts = self.coefficients_in(v);
        let mut acc = Self::zero();
        for part in parts.iter().rev() {
            acc = acc.mul(image);
            acc.add_assign(part);
        }
        acc
    }

    /// `c0^D · self(v = r / c0)` with `D = clear` (which must be at least `deg_v self`).
    ///
    /// Horner in `v`; each step multiplies by the (short) polynomial `r`.
    pub fn substitute_cleared(&self, v: usize, r: &Self, c0: &C, clear: u32) -> Self {
        let parts = self.coefficients_in(v);
        let deg = parts.len() - 1;
        assert!(clear as usize >= deg, "clearing power below degree");
        let mut c0_pows = vec![C::one()];
        for i in 1..=deg {
            let next = c0_pows[i - 1].mul_ref(c0);
            c0_pows.push(next);
        }
        let mut acc = parts[deg].clone();
        for i in (0..deg).rev() {
            acc = acc.mul(r);
            acc.add_scaled(&parts[i], &c0_pows[deg - i]);
        }
        let mut k = C::one();
        for _ in deg..clear as usize {
            k = k.mul_ref(c0);
        }
        if k.is_one() {
            acc
        } else {
            acc.scale(&k)
        }
    }
}

impl Poly<Integer> {
    pub fn derivative(&self, v: usize) -> Self {
        let mut r = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e > 0 {
                r.terms
                    .insert(m.with_exponent(v, e - 1), c * Integer::from(e));
            }
        }
        r
    }

    /// Gcd of the coefficients, carrying the sign of some fixed leading term.
    pub fn content(&self) -> Integer {
        let mut g = Integer::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn div_exact_scalar(&self, k: &Integer) -> Self {
        self.map_coeffs(|c| {
            debug_assert!((c % k).is_zero());
            c / k
        })
    }

    /// Exact quotient by the linear polynomial `c·x_v + rest`, where `rest` does
    /// not involve `v`; `None` when the division leaves a remainder.
    pub fn div_linear(&self, v: usize, c: &Integer, rest: &Self) -> Option<Self> {
        let parts = self.coefficients_in(v);
        let deg = parts.len() - 1;
        if deg == 0 {
            return if self.is_zero() {
                Some(Self::zero())
            } else {
                None
            };
        }
        let mut q: Vec<Self> = vec![Self::zero(); deg];
        let mut carry = parts[deg].clone();
        for k in (1..=deg).rev() {
            // q_{k-1} = carry / c
            let mut qk = Self::zero();
            for (m, a) in &carry.terms {
                let (quo, rem) = a.div_rem(c);
                if !rem.is_zero() {
                    return None;
                }
                qk.terms.insert(*m, quo);
            }
            let mut next = parts[k - 1].clone();
            next.add_scaled(&rest.mul(&qk), &Integer::from(-1));
            q[k - 1] = qk;
            carry = next;
        }
        if !carry.is_zero() {
            return None;
        }
        let mut out = Self::zero();
        for (k, qk) in q.into_iter().enumerate() {
            out.add_assign(&qk.shift(Monomial::var_pow(v, k as u32)));
        }
        Some(out)
    }

    pub fn to_rational(&self) -> Poly<Rational> {
        self.map_coeffs_into(|c| Rational::from_integer(c.clone()))
    }
}

impl Poly<Rational> {
    /// `self = scale · p` with `p` integral and primitive.
    pub fn to_integer(&self) -> (Rational, Poly<Integer>) {
        if self.is_zero() {
            return (Rational::zero(), Poly::zero());
        }
        let mut den = Integer::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let scaled: Poly<Integer> =
            self.map_coeffs_into(|c| (c * Rational::from_integer(den.clone())).to_integer());
        let g = scaled.content();
        let p = scaled.div_exact_scalar(&g);
        (Rational::new(g, den), p)
    }

    pub fn derivative(&self, v: usize) -> Self {
        let mut r = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e > 0 {
                r.terms.insert(
                    m.with_exponent(v, e - 1),
                    c * Rational::from_integer(e.into()),
                );
            }
        }
        r
    }

    /// Evaluates at a point (one rational per variable index).
    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, x) in point.iter().enumerate() {
                let e = m.exponent(v);
                if e > 0 {
                    t *= super::rational::pow_rat(x, e as i32);
                }
            }
            acc += t;
        }
        acc
    }
}

impl<C: Coeff> Poly<C> {
    pub fn map_coeffs_into<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let mut r = Poly::<D>::zero();
        for (m, c) in &self.terms {
            let d = f(c);
            if !d.is_zero() {
                r.terms.insert(*m, d);
            }
        }
        r
    }
}

impl<C: Coeff> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<C: Coeff> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = self.sorted_terms();
        terms.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then(b.0.cmp(&a.0)));
        for (i, (m, c)) in terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for v in 0..m.support_len() {
                match m.exponent(v) {
                    0 => {}
                    1 => write!(f, "*x{v}")?,
                    e => write!(f, "*x{v}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

/// Sign of an integer as `-1`, `0` or `1`.
pub fn signum(n: &Integer) -> i32 {
    if n.is_positive() {
        1
    } else if n.is_negative() {
        -1
    } else {
        0
    }
}
