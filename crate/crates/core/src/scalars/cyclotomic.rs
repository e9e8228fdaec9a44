//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(N)-1}` and are
//! always fully reduced modulo the N-th cyclotomic polynomial. Operands with
//! different conductors are lifted into `Q(ζ_lcm)` before combining.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Cached data for one conductor.
struct CycloData {
    phi: usize,
    /// `powers[e]` = reduction of `x^e` for `0 <= e < N`, as integer coordinates.
    powers: Vec<Vec<i64>>,
}

fn poly_divide_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // both little-endian, den monic
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if num.len() < den.len() {
        return vec![];
    }
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, &dv) in den.iter().enumerate() {
                rem[i + j] -= c * dv;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

fn cyclotomic_poly(n: u32, cache: &mut HashMap<u32, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = cache.get(&n) {
        return p.clone();
    }
    // x^n - 1 = prod_{d | n} Phi_d
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let pd = cyclotomic_poly(d, cache);
            p = poly_divide_exact(&p, &pd);
        }
    }
    cache.insert(n, p.clone());
    p
}

fn data(n: u32) -> Arc<CycloData> {
    static CACHE: OnceLock<Mutex<(HashMap<u32, Arc<CycloData>>, HashMap<u32, Vec<i64>>)>> =
        OnceLock::new();
    let lock = CACHE.get_or_init(|| Mutex::new((HashMap::new(), HashMap::new())));
    let mut guard = lock.lock().expect("cyclotomic cache poisoned");
    if let Some(d) = guard.0.get(&n) {
        return d.clone();
    }
    let poly = cyclotomic_poly(n, &mut guard.1);
    let phi = poly.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x and reduce with the monic polynomial
        let top = cur[phi - 1];
        for j in (1..phi).rev() {
            cur[j] = cur[j - 1] - top * poly[j];
        }
        cur[0] = -top * poly[0];
    }
    let d = Arc::new(CycloData { phi, powers });
    guard.0.insert(n, d.clone());
    d
}

/// Euler's totient via the degree of the cyclotomic polynomial.
pub fn euler_phi(n: u32) -> usize {
    data(n).phi
}

/// An exact element of `Q(ζ_N)`.
#[derive(Clone)]
pub struct CycScalar {
    n: u32,
    coeffs: Vec<Q>,
}

impl CycScalar {
    pub fn zero() -> Self {
        CycScalar { n: 1, coeffs: vec![Q::zero()] }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        CycScalar { n: 1, coeffs: vec![q(v)] }
    }

    pub fn from_q(v: Q) -> Self {
        CycScalar { n: 1, coeffs: vec![v] }
    }

    /// `ζ_n^k` for any integer k.
    pub fn zeta(n: u32, k: i64) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let d = data(n);
        let e = k.rem_euclid(n as i64) as usize;
        CycScalar { n, coeffs: d.powers[e].iter().map(|&c| q(c)).collect() }
    }

    /// Builds an element from power-basis coordinates; the vector must have length φ(N).
    pub fn from_coeffs(n: u32, coeffs: Vec<Q>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("conductor must be positive".into()));
        }
        let phi = euler_phi(n);
        if coeffs.len() != phi {
            return Err(Error::InvalidInput(format!(
                "conductor {n} needs {phi} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(CycScalar { n, coeffs })
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn to_rational(&self) -> Option<Q> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    pub fn to_integer(&self) -> Option<i64> {
        let r = self.to_rational()?;
        if r.is_integer() {
            r.to_integer().to_i64()
        } else {
            None
        }
    }

    /// Lifts into `Q(ζ_target)`; `target` must be a multiple of the conductor.
    pub fn lift(&self, target: u32) -> Self {
        if target == self.n {
            return self.clone();
        }
        assert!(target % self.n == 0, "cannot lift conductor {} to {}", self.n, target);
        let step = (target / self.n) as usize;
        let d = data(target);
        let mut out = vec![Q::zero(); d.phi];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (j * step) % target as usize;
            for (o, &p) in out.iter_mut().zip(d.powers[e].iter()) {
                if p != 0 {
                    *o += c * q(p);
                }
            }
        }
        CycScalar { n: target, coeffs: out }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let l = a.n.lcm(&b.n);
        (a.lift(l), b.lift(l))
    }

    pub fn scale_int(&self, k: i64) -> Self {
        if k == 1 {
            return self.clone();
        }
        let kq = q(k);
        CycScalar { n: self.n, coeffs: self.coeffs.iter().map(|c| c * &kq).collect() }
    }

    pub fn scale_q(&self, k: &Q) -> Self {
        CycScalar { n: self.n, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Multiplicative inverse; fails on zero.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.n == 1 || self.is_rational() {
            let r = self.coeffs[0].recip();
            let mut coeffs = vec![Q::zero(); self.coeffs.len()];
            coeffs[0] = r;
            return Ok(CycScalar { n: self.n, coeffs });
        }
        // Solve (multiplication-by-self matrix) * x = e_0.
        let phi = self.coeffs.len();
        let mut basis = CycScalar { n: self.n, coeffs: vec![Q::zero(); phi] };
        let mut mat: Vec<Vec<Q>> = vec![vec![Q::zero(); phi + 1]; phi];
        for j in 0..phi {
            basis.coeffs.iter_mut().for_each(|c| *c = Q::zero());
            basis.coeffs[j] = Q::one();
            let col = self * &basis;
            for i in 0..phi {
                mat[i][j] = col.coeffs[i].clone();
            }
        }
        mat[0][phi] = Q::one();
        let x = solve_rational_square(mat).ok_or(Error::DivisionByZero)?;
        Ok(CycScalar { n: self.n, coeffs: x })
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CycScalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// True when some power of the element equals one.
    pub fn is_root_of_unity(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        // roots of unity in Q(ζ_N) have order dividing lcm(2, N)
        let ord = 2u32.lcm(&self.n) as i64;
        self.pow(ord).map(|p| p.is_one()).unwrap_or(false)
    }

    /// Smallest k > 0 with self^k = 1, if the element is a root of unity.
    pub fn multiplicative_order(&self) -> Option<u64> {
        if !self.is_root_of_unity() {
            return None;
        }
        let ord = 2u32.lcm(&self.n) as u64;
        let mut acc = self.clone();
        for k in 1..=ord {
            if acc.is_one() {
                return Some(k);
            }
            acc = &acc * self;
        }
        None
    }
}

/// Gaussian elimination on an augmented square rational system.
fn solve_rational_square(mut m: Vec<Vec<Q>>) -> Option<Vec<Q>> {
    let n = m.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (a, b) in m[r].iter_mut().zip(pivot_row.iter()) {
                    *a -= &f * b;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = CycScalar::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycScalar {}

impl Default for CycScalar {
    fn default() -> Self {
        CycScalar::zero()
    }
}

impl From<i64> for CycScalar {
    fn from(v: i64) -> Self {
        CycScalar::from_int(v)
    }
}

impl From<Q> for CycScalar {
    fn from(v: Q) -> Self {
        CycScalar::from_q(v)
    }
}

impl<'a> Add<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: &CycScalar) -> CycScalar {
        if self.n == rhs.n {
            let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
            return CycScalar { n: self.n, coeffs };
        }
        let (a, b) = CycScalar::common(self, rhs);
        &a + &b
    }
}

impl<'a> Sub<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: &CycScalar) -> CycScalar {
        if self.n == rhs.n {
            let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
            return CycScalar { n: self.n, coeffs };
        }
        let (a, b) = CycScalar::common(self, rhs);
        &a - &b
    }
}

impl<'a> Mul<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: &CycScalar) -> CycScalar {
        if self.n != rhs.n {
            // rational operands scale without lifting
            if self.n == 1 {
                return rhs.scale_q(&self.coeffs[0]);
            }
            if rhs.n == 1 {
                return self.scale_q(&rhs.coeffs[0]);
            }
            let (a, b) = CycScalar::common(self, rhs);
            return &a * &b;
        }
        if self.n == 1 {
            return CycScalar { n: 1, coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]] };
        }
        let d = data(self.n);
        let phi = d.phi;
        let mut prod = vec![Q::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut out: Vec<Q> = prod[..phi].to_vec();
        for (e, c) in prod.iter().enumerate().skip(phi) {
            if c.is_zero() {
                continue;
            }
            let red = &d.powers[e % self.n as usize];
            for (o, &p) in out.iter_mut().zip(red.iter()) {
                if p != 0 {
                    *o += c * q(p);
                }
            }
        }
        CycScalar { n: self.n, coeffs: out }
    }
}

impl<'a> Div<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    /// Panics on division by zero; use [`CycScalar::checked_div`] for a fallible version.
    fn div(self, rhs: &CycScalar) -> CycScalar {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl CycScalar {
    pub fn checked_div(&self, rhs: &CycScalar) -> Result<CycScalar> {
        Ok(self * &rhs.inv()?)
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar { n: self.n, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: CycScalar) -> CycScalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: &CycScalar) -> CycScalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<CycScalar> for &'a CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: CycScalar) -> CycScalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&CycScalar> for CycScalar {
    fn add_assign(&mut self, rhs: &CycScalar) {
        if self.n == rhs.n {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a += b;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&CycScalar> for CycScalar {
    fn sub_assign(&mut self, rhs: &CycScalar) {
        if self.n == rhs.n {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a -= b;
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

impl MulAssign<&CycScalar> for CycScalar {
    fn mul_assign(&mut self, rhs: &CycScalar) {
        *self = &*self * rhs;
    }
}

fn fmt_q(c: &Q) -> String {
    if c.is_integer() {
        c.to_integer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = match j {
                0 => fmt_q(c),
                _ => {
                    let z = if j == 1 { format!("z{}", self.n) } else { format!("z{}^{}", self.n, j) };
                    if c.is_one() {
                        z
                    } else if (-c).is_one() {
                        format!("-{z}")
                    } else {
                        format!("{}*{z}", fmt_q(c))
                    }
                }
            };
            parts.push(term);
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        let mut s = parts[0].clone();
        for p in &parts[1..] {
            if let Some(rest) = p.strip_prefix('-') {
                s.push_str(" - ");
                s.push_str(rest);
            } else {
                s.push_str(" + ");
                s.push_str(p);
            }
        }
        write!(f, "{s}")
    }
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl CycScalar {
    /// Parses the compact text form used in configs: `3`, `-1/2`, `z4`, `-z6^5`, `2*z3^2`.
    /// Sums of such terms may be joined with `+`.
    pub fn parse(text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::InvalidInput("empty scalar".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'*' && bytes[i - 1] != b'^' {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);
        let mut acc = CycScalar::zero();
        for t in terms {
            acc = &acc + &parse_term(t)?;
        }
        Ok(acc)
    }
}

fn parse_rational(t: &str) -> Result<Q> {
    let bad = || Error::InvalidInput(format!("bad rational '{t}'"));
    if let Some((a, b)) = t.split_once('/') {
        let a: BigInt = a.parse().map_err(|_| bad())?;
        let b: BigInt = b.parse().map_err(|_| bad())?;
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Q::new(a, b))
    } else {
        Ok(Q::from_integer(t.parse().map_err(|_| bad())?))
    }
}

fn parse_term(t: &str) -> Result<CycScalar> {
    let t = t.strip_prefix('+').unwrap_or(t);
    let (neg, body) = match t.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, t),
    };
    let (coef, root) = match body.split_once('*') {
        Some((c, r)) => (parse_rational(c)?, Some(r)),
        None if body.starts_with('z') => (Q::one(), Some(body)),
        None => (parse_rational(body)?, None),
    };
    let mut val = CycScalar::from_q(coef);
    if let Some(r) = root {
        let r = r
            .strip_prefix('z')
            .ok_or_else(|| Error::InvalidInput(format!("bad root of unity '{r}'")))?;
        let (n, k) = match r.split_once('^') {
            Some((n, k)) => (n, k),
            None => (r, "1"),
        };
        let n: u32 = n.parse().map_err(|_| Error::InvalidInput(format!("bad conductor in '{t}'")))?;
        let k: i64 = k.parse().map_err(|_| Error::InvalidInput(format!("bad exponent in '{t}'")))?;
        if n == 0 {
            return Err(Error::InvalidInput("conductor must be positive".into()));
        }
        val = &val * &CycScalar::zeta(n, k);
    }
    Ok(if neg { -val } else { val })
}

/// Sign of a rational, used by orderings in reports.
pub fn q_sign(v: &Q) -> i32 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totients() {
        let expect = [(1, 1), (2, 1), (3, 2), (4, 2), (5, 4), (6, 2), (8, 4), (12, 4)];
        for (n, phi) in expect {
            assert_eq!(euler_phi(n), phi, "phi({n})");
        }
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = CycScalar::zeta(4, 1);
        assert_eq!(&i * &i, CycScalar::from_int(-1));
    }

    #[test]
    fn cube_roots_sum_to_zero() {
        let z = CycScalar::zeta(3, 1);
        let s = &(&CycScalar::one() + &z) + &(&z * &z);
        assert!(s.is_zero());
    }

    #[test]
    fn sixth_root_inverse() {
        let z = CycScalar::zeta(6, 1);
        assert_eq!(&z / &CycScalar::one(), z);
        assert_eq!(z.inv().unwrap(), CycScalar::zeta(6, 5));
    }

    #[test]
    fn division_by_zero_is_error() {
        assert!(matches!(CycScalar::zero().inv(), Err(Error::DivisionByZero)));
        assert!(CycScalar::one().checked_div(&CycScalar::zero()).is_err());
    }

    #[test]
    fn mixed_conductors_lift() {
        // ζ_4 = ζ_12^3
        assert_eq!(CycScalar::zeta(4, 1), CycScalar::zeta(12, 3));
        let s = &CycScalar::zeta(3, 1) + &CycScalar::zeta(4, 1);
        assert_eq!(s.conductor(), 12);
        assert_eq!(CycScalar::zeta(2, 1), CycScalar::from_int(-1));
    }

    #[test]
    fn roots_of_unity() {
        assert!(CycScalar::zeta(5, 2).is_root_of_unity());
        assert_eq!(CycScalar::zeta(6, 2).multiplicative_order(), Some(3));
        assert_eq!(CycScalar::from_int(-1).multiplicative_order(), Some(2));
        assert!(!CycScalar::from_int(2).is_root_of_unity());
        let not_root = &CycScalar::one() + &CycScalar::zeta(4, 1);
        assert!(!not_root.is_root_of_unity());
    }

    #[test]
    fn parse_forms() {
        assert_eq!(CycScalar::parse("-1/2").unwrap(), CycScalar::from_q(q_frac(-1, 2)));
        assert_eq!(CycScalar::parse("z4").unwrap(), CycScalar::zeta(4, 1));
        assert_eq!(CycScalar::parse("-z6^5").unwrap(), -CycScalar::zeta(6, 5));
        assert_eq!(
            CycScalar::parse("1 + 2*z3^2").unwrap(),
            &CycScalar::one() + &CycScalar::zeta(3, 2).scale_int(2)
        );
        assert!(CycScalar::parse("z0").is_err());
        assert!(CycScalar::parse("abc").is_err());
    }

    #[test]
    fn display() {
        assert_eq!(CycScalar::zeta(4, 1).to_string(), "z4");
        assert_eq!(CycScalar::zeta(3, 2).to_string(), "-1 - z3");
    }
}
