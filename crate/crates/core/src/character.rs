//! Dirichlet characters stored as exponent tables over a primitive `m`-th
//! root of unity, evaluable in `C` and (for `m | p - 1`) in `Q_p`.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::padic::{teichmuller, PadicNumber, PrecisionPolicy};

/// `chi(a) = zeta_m^{e(a)}` for `gcd(a, f) = 1`, zero otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirichletCharacter {
    modulus: u64,
    order: u64,
    table: Vec<Option<u64>>,
    conductor: u64,
}

/// Smallest primitive root modulo an odd prime.
pub fn smallest_primitive_root(p: u64) -> u64 {
    let phi = p - 1;
    let mut factors = Vec::new();
    let mut n = phi;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            factors.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        factors.push(n);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&q| mod_pow(g, phi / q, p) != 1))
        .unwrap_or(1)
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Discrete log of `a` to the base `g` modulo `p` (`a` coprime to `p`).
fn discrete_log(g: u64, a: u64, p: u64) -> u64 {
    let a = a % p;
    let mut x = 1 % p;
    for k in 0..p - 1 {
        if x == a {
            return k;
        }
        x = x * g % p;
    }
    unreachable!("{a} is not a power of the primitive root {g} mod {p}")
}

impl DirichletCharacter {
    /// The character of modulus 1, `chi(n) = 1` for every `n`.
    pub fn trivial() -> Self {
        DirichletCharacter {
            modulus: 1,
            order: 1,
            table: vec![Some(0)],
            conductor: 1,
        }
    }

    /// Expands the exponents of a set of generators of `(Z/f)^x` into the
    /// full table, checking that they define a homomorphism of exact order
    /// `m`.
    pub fn from_generators(f: u64, images: &[(u64, u64)], m: u64) -> Result<Self> {
        let chi = Self::expand(f, images, m)?;
        if chi.exact_order() != m {
            return Err(Error::InvalidCharacter("exponents do not generate Z/m"));
        }
        Ok(chi)
    }

    fn expand(f: u64, images: &[(u64, u64)], m: u64) -> Result<Self> {
        if f == 0 || m == 0 {
            return Err(Error::InvalidCharacter("modulus and order must be positive"));
        }
        let mut table: Vec<Option<u64>> = vec![None; f as usize];
        table[(1 % f) as usize] = Some(0);
        let gens: Vec<(u64, u64)> = images.iter().map(|&(a, e)| (a % f, e % m)).collect();
        for &(a, _) in &gens {
            if a.gcd(&f) != 1 {
                return Err(Error::InvalidCharacter("generator not coprime to the modulus"));
            }
        }
        let mut queue = VecDeque::from([1 % f]);
        while let Some(x) = queue.pop_front() {
            let ex = table[x as usize].expect("queued residues are assigned");
            for &(g, eg) in &gens {
                let y = x * g % f;
                let ey = (ex + eg) % m;
                match table[y as usize] {
                    None => {
                        table[y as usize] = Some(ey);
                        queue.push_back(y);
                    }
                    Some(old) if old != ey => {
                        return Err(Error::InvalidCharacter("generator images are not a homomorphism"));
                    }
                    _ => {}
                }
            }
        }
        for a in 0..f {
            let unit = a.gcd(&f) == 1;
            if unit != table[a as usize].is_some() {
                return Err(Error::InvalidCharacter("generators do not generate (Z/f)^x"));
            }
        }
        let mut chi = DirichletCharacter {
            modulus: f,
            order: m,
            table,
            conductor: f,
        };
        chi.conductor = chi.compute_conductor();
        Ok(chi)
    }

    /// Builds a character from a full exponent table (`None` off the units),
    /// reducing the order to the exact one.
    pub(crate) fn from_exponents(f: u64, table: Vec<Option<u64>>, m: u64) -> Result<Self> {
        let mut chi = DirichletCharacter {
            modulus: f,
            order: m,
            table,
            conductor: f,
        };
        chi.validate_multiplicative()?;
        let exact = chi.exact_order();
        if exact != m {
            let shrink = m / exact;
            for e in chi.table.iter_mut().flatten() {
                *e /= shrink;
            }
            chi.order = exact;
        }
        chi.conductor = chi.compute_conductor();
        Ok(chi)
    }

    /// Quadratic character modulo an odd prime (the Legendre symbol).
    pub fn legendre(p: u64) -> Result<Self> {
        crate::padic::check_odd_prime(p)?;
        let g = smallest_primitive_root(p);
        Self::from_generators(p, &[(g, 1)], 2)
    }

    /// The character of order `m | p - 1` modulo an odd prime `p` sending
    /// the smallest primitive root to `zeta_m^e`.
    pub fn mod_prime(p: u64, m: u64, e: u64) -> Result<Self> {
        crate::padic::check_odd_prime(p)?;
        if !(p - 1).is_multiple_of(m) {
            return Err(Error::InvalidCharacter("order must divide p - 1"));
        }
        let g = smallest_primitive_root(p);
        Self::from_generators(p, &[(g, e)], m)
    }

    fn validate_multiplicative(&self) -> Result<()> {
        let f = self.modulus;
        if self.table[(1 % f) as usize] != Some(0) {
            return Err(Error::InvalidCharacter("chi(1) must be 1"));
        }
        for a in 0..f {
            for b in a..f {
                if let (Some(ea), Some(eb)) = (self.table[a as usize], self.table[b as usize]) {
                    if self.table[(a * b % f) as usize] != Some((ea + eb) % self.order) {
                        return Err(Error::InvalidCharacter("table is not multiplicative"));
                    }
                }
            }
        }
        Ok(())
    }

    fn exact_order(&self) -> u64 {
        let g = self
            .table
            .iter()
            .flatten()
            .fold(self.order, |acc, &e| acc.gcd(&e));
        self.order / g
    }

    fn compute_conductor(&self) -> u64 {
        let f = self.modulus;
        for d in 1..=f {
            if !f.is_multiple_of(d) {
                continue;
            }
            let induced = (0..f).all(|a| match self.table[a as usize] {
                Some(e) if a % d == 1 % d => e == 0,
                _ => true,
            });
            if induced {
                return d;
            }
        }
        f
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// The primitive character inducing this one.
    pub fn primitive(&self) -> Self {
        if self.is_primitive() {
            return self.clone();
        }
        let d = self.conductor;
        let f = self.modulus;
        let mut table = vec![None; d as usize];
        for b in 0..d {
            if b.gcd(&d) != 1 {
                continue;
            }
            // any lift of b that is a unit mod f has the same value
            let mut a = b;
            while a.gcd(&f) != 1 {
                a += d;
            }
            table[b as usize] = self.table[(a % f) as usize];
        }
        DirichletCharacter {
            modulus: d,
            order: self.order,
            table,
            conductor: d,
        }
    }

    /// `e(a)`, or `None` when `gcd(a, f) > 1`.
    pub fn exponent(&self, a: i64) -> Option<u64> {
        self.table[a.rem_euclid(self.modulus as i64) as usize]
    }

    /// `chi(a)` under `zeta_m -> exp(2 pi i / m)`.
    pub fn eval_complex(&self, a: i64) -> Complex64 {
        match self.exponent(a) {
            None => Complex64::new(0.0, 0.0),
            Some(e) => root_of_unity(e, self.order),
        }
    }

    /// The image of `zeta_m` in `Q_p`: `omega(g)^{(p-1)/m}` for the smallest
    /// primitive root `g`.
    pub fn padic_zeta(&self, p: u64, policy: &PrecisionPolicy) -> Result<PadicNumber> {
        if !(p - 1).is_multiple_of(self.order) {
            return Err(Error::UnsupportedCharacter("order does not divide p - 1"));
        }
        let g = smallest_primitive_root(p);
        let w = teichmuller(g as i64, p, policy)?;
        Ok(w.pow(((p - 1) / self.order) as u32))
    }

    /// `chi(a)` as an element of `Q_p`.
    pub fn eval_padic(&self, a: i64, p: u64, policy: &PrecisionPolicy) -> Result<PadicNumber> {
        let zeta = self.padic_zeta(p, policy)?;
        Ok(self.eval_with_zeta(a, &zeta, policy))
    }

    pub(crate) fn eval_with_zeta(&self, a: i64, zeta: &PadicNumber, policy: &PrecisionPolicy) -> PadicNumber {
        match self.exponent(a) {
            None => PadicNumber::zero(zeta.prime(), policy.target_abs_prec),
            Some(e) => zeta.pow(e as u32),
        }
    }

    /// Values `chi(0), ..., chi(f-1)` in `Q_p`.
    pub fn padic_table(&self, p: u64, policy: &PrecisionPolicy) -> Result<Vec<PadicNumber>> {
        let zeta = self.padic_zeta(p, policy)?;
        Ok((0..self.modulus as i64)
            .map(|a| self.eval_with_zeta(a, &zeta, policy))
            .collect())
    }
}

fn root_of_unity(e: u64, m: u64) -> Complex64 {
    let e = e % m;
    // exact values on the axes
    if (4 * e).is_multiple_of(m) {
        return match 4 * e / m {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    let theta = 2.0 * core::f64::consts::PI * e as f64 / m as f64;
    Complex64::from_polar(1.0, theta)
}

/// Formats as `f=<int> m=<int> map=a1:e1,...` using all units below `f`.
impl fmt::Display for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f={} m={} map=", self.modulus, self.order)?;
        let mut first = true;
        for (a, e) in self.table.iter().enumerate() {
            if let Some(e) = e {
                if self.modulus > 1 && a == 1 {
                    continue;
                }
                if !first {
                    f.write_str(",")?;
                }
                first = false;
                write!(f, "{a}:{e}")?;
            }
        }
        Ok(())
    }
}

/// Parses `f=<int> m=<int> map=a1:e1,a2:e2,...` where the `a_i` generate
/// `(Z/f)^x`. `map=` may be empty for the trivial character.
impl FromStr for DirichletCharacter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut f = None;
        let mut m = None;
        let mut map = Vec::new();
        for tok in s.split_whitespace() {
            let (key, val) = tok
                .split_once('=')
                .ok_or(Error::InvalidArgument("character spec tokens are key=value"))?;
            match key {
                "f" => f = Some(parse_u64(val)?),
                "m" => m = Some(parse_u64(val)?),
                "map" => {
                    for pair in val.split(',').filter(|x| !x.is_empty()) {
                        let (a, e) = pair
                            .split_once(':')
                            .ok_or(Error::InvalidArgument("map entries are a:e"))?;
                        map.push((parse_u64(a)?, parse_u64(e)?));
                    }
                }
                _ => return Err(Error::InvalidArgument("unknown key in character spec")),
            }
        }
        let f = f.ok_or(Error::InvalidArgument("character spec needs f="))?;
        let m = m.unwrap_or(1);
        DirichletCharacter::from_generators(f, &map, m)
    }
}

fn parse_u64(s: &str) -> Result<u64> {
    s.parse()
        .map_err(|_| Error::InvalidArgument("expected a non-negative integer"))
}

/// `chi_n = chi * omega^{-n}`: as a character modulo `lcm(f, p)` and as the
/// primitive character inducing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedCharacter {
    base: DirichletCharacter,
    twist_n: i64,
    prime: u64,
    full: DirichletCharacter,
    primitive: DirichletCharacter,
}

/// Twists `chi` by `omega^{-n}`. Values are expressed over `zeta_{p-1}`
/// with the same embedding as [`DirichletCharacter::eval_padic`], so
/// `chi` must have order dividing `p - 1`.
pub fn twist(chi: &DirichletCharacter, n: i64, p: u64) -> Result<TwistedCharacter> {
    crate::padic::check_odd_prime(p)?;
    if !(p - 1).is_multiple_of(chi.order) {
        return Err(Error::UnsupportedCharacter("order does not divide p - 1"));
    }
    let f = chi.modulus;
    let big = f.lcm(&p);
    let g = smallest_primitive_root(p);
    let scale = (p - 1) / chi.order;
    let nm = n.rem_euclid((p - 1) as i64) as u64;
    let mut table = vec![None; big as usize];
    for a in 0..big {
        if a.gcd(&big) != 1 {
            continue;
        }
        let e_chi = chi.table[(a % f) as usize].expect("unit mod lcm is a unit mod f");
        let ind = discrete_log(g, a % p, p);
        let e = (e_chi * scale + (p - 1) * nm - (nm * ind) % (p - 1)) % (p - 1);
        table[a as usize] = Some(e);
    }
    let full = DirichletCharacter::from_exponents(big, table, p - 1)?;
    let primitive = full.primitive();
    Ok(TwistedCharacter {
        base: chi.clone(),
        twist_n: n,
        prime: p,
        full,
        primitive,
    })
}

impl TwistedCharacter {
    pub fn base(&self) -> &DirichletCharacter {
        &self.base
    }

    pub fn twist_n(&self) -> i64 {
        self.twist_n
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// `chi_n` as a character modulo `lcm(f, p)`.
    pub fn full(&self) -> &DirichletCharacter {
        &self.full
    }

    /// The primitive character `chi_n` of conductor `f_{chi_n}`.
    pub fn primitive(&self) -> &DirichletCharacter {
        &self.primitive
    }

    pub fn conductor(&self) -> u64 {
        self.primitive.conductor
    }

    /// `chi_n(a)` for the character modulo `lcm(f, p)`.
    pub fn eval_padic(&self, a: i64, policy: &PrecisionPolicy) -> Result<PadicNumber> {
        self.full.eval_padic(a, self.prime, policy)
    }

    /// `chi_n(p)` for the primitive character; zero when `p | f_{chi_n}`.
    pub fn value_at_p(&self, policy: &PrecisionPolicy) -> Result<PadicNumber> {
        self.primitive.eval_padic(self.prime as i64, self.prime, policy)
    }
}
