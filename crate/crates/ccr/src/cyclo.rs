//! Exact arithmetic in cyclotomic fields `ℚ(ζ_n)`.
//!
//! An element of order `n` is stored by its coordinates in the power basis
//! `1, ζ, …, ζ^{φ(n)−1}`, reduced modulo the cyclotomic polynomial `Φ_n`. Elements of
//! different orders are compared and combined in the field of the least common order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use gaugeloc_linalg::Rat;
use num_bigint::BigInt;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Quotient of `p` by the monic polynomial `q` (coefficients low to high).
fn divide(p: &[Rat], q: &[Rat]) -> Vec<Rat> {
    let dq = q.len() - 1;
    let mut r = p.to_vec();
    let mut out = vec![Rat::zero(); p.len() - dq];
    for i in (dq..p.len()).rev() {
        let t = r[i].clone();
        if t.is_zero() {
            continue;
        }
        out[i - dq] = t.clone();
        for (j, qj) in q.iter().enumerate() {
            r[i - dq + j] -= &t * qj;
        }
    }
    debug_assert!(r.iter().all(Rat::is_zero));
    out
}

fn cyclotomic(n: u64) -> Arc<Vec<Rat>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<Rat>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().expect("cyclotomic cache").get(&n) {
        return p.clone();
    }
    let mut p = vec![Rat::zero(); n as usize + 1];
    p[0] = Rat::int(-1);
    p[n as usize] = Rat::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = divide(&p, &cyclotomic(d));
        }
    }
    let p = Arc::new(p);
    cache.lock().expect("cyclotomic cache").insert(n, p.clone());
    p
}

fn reduce(n: u64, mut poly: Vec<Rat>) -> Vec<Rat> {
    let phi = cyclotomic(n);
    let d = phi.len() - 1;
    for i in (d..poly.len()).rev() {
        let t = std::mem::take(&mut poly[i]);
        if t.is_zero() {
            continue;
        }
        for (j, pj) in phi.iter().take(d).enumerate() {
            poly[i - d + j] -= &t * pj;
        }
    }
    poly.resize(d, Rat::zero());
    poly
}

/// An element of `ℚ(ζ_n)`.
#[derive(Clone)]
pub struct Cyclo {
    n: u64,
    coeffs: Vec<Rat>,
}

impl Cyclo {
    pub fn zero() -> Cyclo {
        Cyclo::from_rat(Rat::zero())
    }

    pub fn one() -> Cyclo {
        Cyclo::from_rat(Rat::one())
    }

    pub fn from_rat(r: Rat) -> Cyclo {
        Cyclo { n: 1, coeffs: vec![r] }
    }

    /// `ζ_n^k`.
    pub fn root(n: u64, k: i64) -> Cyclo {
        assert!(n > 0, "root of unity of order zero");
        let e = k.rem_euclid(n as i64) as usize;
        let mut poly = vec![Rat::zero(); e + 1];
        poly[e] = Rat::one();
        Cyclo { n, coeffs: reduce(n, poly) }
    }

    /// `exp(iπθ)` for rational `θ`.
    pub fn exp_i_pi(theta: &Rat) -> Cyclo {
        let b = theta.denom();
        let n = u64::try_from(b * BigInt::from(2)).expect("phase denominator too large");
        let a = (theta.numer() % BigInt::from(n)).try_into().expect("phase numerator");
        Cyclo::root(n, a)
    }

    pub fn i() -> Cyclo {
        Cyclo::root(4, 1)
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    /// Power-basis coordinates.
    pub fn coefficients(&self) -> &[Rat] {
        &self.coeffs
    }

    fn lift(&self, m: u64) -> Vec<Rat> {
        debug_assert_eq!(m % self.n, 0);
        if m == self.n {
            return self.coeffs.clone();
        }
        let step = (m / self.n) as usize;
        let mut poly = vec![Rat::zero(); (self.coeffs.len() - 1) * step + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            poly[j * step] = c.clone();
        }
        reduce(m, poly)
    }

    fn zip(&self, other: &Cyclo, f: impl Fn(&Rat, &Rat) -> Rat) -> Cyclo {
        let m = lcm(self.n, other.n);
        let a = self.lift(m);
        let b = other.lift(m);
        Cyclo { n: m, coeffs: a.iter().zip(&b).map(|(x, y)| f(x, y)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    /// The value as a rational number, when it is one.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(Rat::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn scale(&self, r: &Rat) -> Cyclo {
        Cyclo { n: self.n, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    pub fn conj(&self) -> Cyclo {
        let n = self.n as usize;
        let mut poly = vec![Rat::zero(); n];
        for (j, c) in self.coeffs.iter().enumerate() {
            poly[(n - j) % n] += c;
        }
        Cyclo { n: self.n, coeffs: reduce(self.n, poly) }
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// `|z|²`, a real element of the field.
    pub fn norm_sq(&self) -> Cyclo {
        self * &self.conj()
    }

    /// `|z|` when it is rational.
    pub fn modulus(&self) -> Option<Rat> {
        let q = self.norm_sq().as_rational()?;
        let (p, d) = (q.numer(), q.denom());
        let (sp, sd) = (p.sqrt(), d.sqrt());
        (&sp * &sp == p && &sd * &sd == d).then(|| Rat::from_bigints(sp, sd))
    }

    /// Floating-point value `(re, im)`, for display and for sign decisions.
    pub fn approx(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let a = 2.0 * std::f64::consts::PI * j as f64 / self.n as f64;
            re += c.approx() * a.cos();
            im += c.approx() * a.sin();
        }
        (re, im)
    }

    /// Sign of a real element. Zero is decided exactly; otherwise the sign is read from
    /// the floating-point value and refused when that value is within `1e-9` of zero.
    pub fn real_sign(&self) -> Option<Ordering> {
        if self.is_zero() {
            return Some(Ordering::Equal);
        }
        if !self.is_real() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(r.signum().cmp(&0));
        }
        let (re, _) = self.approx();
        (re.abs() > 1e-9).then(|| re.partial_cmp(&0.0).expect("finite"))
    }

    /// `(r, θ)` with `self = r·exp(iπθ)`, `r > 0` and `θ ∈ [0, 2)`, when such a form exists
    /// with `exp(iπθ)` a root of unity of the element's order (or that order doubled).
    pub fn as_polar(&self) -> Option<(Rat, Rat)> {
        if self.is_zero() {
            return None;
        }
        let n = 2 * self.n;
        for k in 0..n as i64 {
            if let Some(r) = (self * &Cyclo::root(n, -k)).as_rational() {
                if r.signum() > 0 {
                    return Some((r, Rat::new(2 * k, n as i64)));
                }
            }
        }
        None
    }
}

impl Default for Cyclo {
    fn default() -> Cyclo {
        Cyclo::zero()
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Cyclo) -> bool {
        let m = lcm(self.n, other.n);
        self.lift(m) == other.lift(m)
    }
}

impl Eq for Cyclo {}

impl From<Rat> for Cyclo {
    fn from(r: Rat) -> Cyclo {
        Cyclo::from_rat(r)
    }
}

impl Add for &Cyclo {
    type Output = Cyclo;
    fn add(self, other: &Cyclo) -> Cyclo {
        self.zip(other, |a, b| a + b)
    }
}

impl Sub for &Cyclo {
    type Output = Cyclo;
    fn sub(self, other: &Cyclo) -> Cyclo {
        self.zip(other, |a, b| a - b)
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo { n: self.n, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &Cyclo {
    type Output = Cyclo;
    fn mul(self, other: &Cyclo) -> Cyclo {
        let m = lcm(self.n, other.n);
        let a = self.lift(m);
        let b = other.lift(m);
        let mut poly = vec![Rat::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] += x * y;
                }
            }
        }
        Cyclo { n: m, coeffs: reduce(m, poly) }
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        if let Some((r, theta)) = self.as_polar() {
            return write!(f, "{r}·exp(i·{theta}·π)");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| if j == 0 { c.to_string() } else { format!("{c}·ζ{}^{j}", self.n) })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo({self})")
    }
}
