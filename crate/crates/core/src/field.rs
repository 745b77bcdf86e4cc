//! Arithmetic in `F_p` and `F_{p^m}` for odd primes `p`.
//!
//! Elements are addressed by a canonical index: the base-`p` digits of the
//! index, least significant first, are the coefficients of the representative
//! polynomial modulo the field's modulus. Multiplication goes through
//! exponential/logarithm tables built from a fixed primitive element, so a
//! context costs `O(q)` memory and every product is two lookups.

use thiserror::Error;

/// Default upper bound on `p^m` for contexts built by the CLI and test grids.
pub const DEFAULT_MAX_Q: u64 = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("extension degree must be at least 1 (got {0})")]
    DegreeTooSmall(u32),
    #[error("field of size {p}^{m} exceeds the cap of {max_q} elements")]
    FieldTooLarge { p: u32, m: u32, max_q: u64 },
    #[error("modulus {0:?} is not a monic irreducible polynomial of the requested degree")]
    ReducibleModulus(Vec<u32>),
    #[error("division by zero")]
    DivisionByZero,
}

/// An element of `F_q`, identified by its canonical index in `[0, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElem(pub u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Returns true when `n` is an odd prime.
pub fn is_odd_prime(n: u64) -> bool {
    if n < 3 || n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn mod_pow(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

/// Legendre symbol `(a / p)` by Euler's criterion.
pub fn legendre(a: i64, p: u32) -> i32 {
    let p64 = p as i64;
    let r = a.rem_euclid(p64) as u64;
    if r == 0 {
        return 0;
    }
    if mod_pow(r, (p as u64 - 1) / 2, p as u64) == 1 {
        1
    } else {
        -1
    }
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomials over F_p, constant term first. Used only while building
// a context; after that every product goes through the log tables.

fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem(a: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let deg = modulus.len() - 1;
    let mut r = a.to_vec();
    while r.len() > deg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - deg;
        if lead != 0 {
            for (i, &c) in modulus.iter().enumerate() {
                let t = (lead as u64 * c as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
        }
        r.pop();
    }
    poly_trim(r)
}

fn poly_mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
    poly_rem(&prod, modulus, p)
}

fn poly_pow_mod(base: &[u32], mut exp: u64, modulus: &[u32], p: u32) -> Vec<u32> {
    let mut acc = poly_rem(&[1], modulus, p);
    let mut b = poly_rem(base, modulus, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_mul_mod(&acc, &b, modulus, p);
        }
        b = poly_mul_mod(&b, &b, modulus, p);
        exp >>= 1;
    }
    acc
}

fn digits_of(mut index: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((index % p as u64) as u32);
        index /= p as u64;
    }
    out
}

fn index_of(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

/// Tests whether the monic polynomial `f` (constant term first, leading 1
/// included) is irreducible over `F_p`, by trial division with every monic
/// polynomial of degree at most `deg f / 2`.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let Some(&lead) = f.last() else {
        return false;
    };
    if lead != 1 || f.iter().any(|&c| c >= p) {
        return false;
    }
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        for tail in 0..(p as u64).pow(d as u32) {
            let mut g = digits_of(tail, p, d);
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// All monic irreducible polynomials of degree `m` over `F_p`, in
/// lexicographic order (coefficients compared from `x^{m-1}` down to the
/// constant term).
pub fn irreducible_moduli(p: u32, m: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(m);
    (0..count).filter_map(move |tail| {
        let mut f = digits_of(tail, p, m as usize);
        f.push(1);
        is_irreducible(&f, p).then_some(f)
    })
}

/// A realization of `F_{p^m}`.
///
/// Immutable after construction; every method is a pure read, so a context
/// can be shared across threads freely.
#[derive(Debug, Clone)]
pub struct FieldCtx {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: FieldElem,
    /// `exp[k] = g^k` for `k` in `[0, q-1)`.
    exp: Vec<u32>,
    /// Discrete log of every nonzero element; `log[0]` is unused.
    log: Vec<u32>,
    trace: Vec<u32>,
    place: Vec<u32>,
}

impl FieldCtx {
    /// Builds `F_{p^m}` over the lexicographically smallest monic irreducible
    /// polynomial of degree `m`.
    pub fn new(p: u32, m: u32, max_q: u64) -> Result<Self, FieldError> {
        Self::check_params(p, m, max_q)?;
        let modulus = irreducible_moduli(p, m).next().expect("an irreducible polynomial exists in every degree");
        Self::build(p, m, modulus)
    }

    /// Builds `F_{p^m}` over a caller-chosen modulus (constant term first,
    /// leading coefficient 1 included).
    pub fn with_modulus(p: u32, m: u32, modulus: Vec<u32>, max_q: u64) -> Result<Self, FieldError> {
        Self::check_params(p, m, max_q)?;
        if modulus.len() != m as usize + 1 || !is_irreducible(&modulus, p) {
            return Err(FieldError::ReducibleModulus(modulus));
        }
        Self::build(p, m, modulus)
    }

    fn check_params(p: u32, m: u32, max_q: u64) -> Result<(), FieldError> {
        if !is_odd_prime(p as u64) {
            return Err(FieldError::NotOddPrime(p as u64));
        }
        if m < 1 {
            return Err(FieldError::DegreeTooSmall(m));
        }
        match (p as u64).checked_pow(m) {
            Some(q) if q <= max_q && q <= u32::MAX as u64 => Ok(()),
            _ => Err(FieldError::FieldTooLarge { p, m, max_q }),
        }
    }

    fn build(p: u32, m: u32, modulus: Vec<u32>) -> Result<Self, FieldError> {
        let q = p.pow(m);
        let order = (q - 1) as u64;
        let factors = distinct_prime_factors(order);

        let is_primitive = |cand: &[u32]| factors.iter().all(|&r| poly_pow_mod(cand, order / r, &modulus, p) != [1]);
        let generator =
            (1..q).find(|&idx| is_primitive(&poly_trim(digits_of(idx as u64, p, m as usize)))).expect("F_q* is cyclic");
        let g_poly = poly_trim(digits_of(generator as u64, p, m as usize));

        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; q as usize];
        let mut cur = vec![1u32];
        for k in 0..order as u32 {
            let idx = index_of(&cur, p);
            exp.push(idx);
            log[idx as usize] = k;
            cur = poly_mul_mod(&cur, &g_poly, &modulus, p);
        }

        let place: Vec<u32> = (0..m).map(|i| p.pow(i)).collect();
        let mut ctx =
            FieldCtx { p, m, q, modulus, generator: FieldElem(generator), exp, log, trace: Vec::new(), place };

        // Trace is F_p-linear: evaluate it on the power basis by Frobenius
        // and extend by coordinates.
        let basis_traces: Vec<u32> = (0..m).map(|j| ctx.trace_frobenius(FieldElem(p.pow(j)))).collect();
        ctx.trace = (0..q)
            .map(|idx| {
                let mut acc = 0u64;
                let mut rest = idx;
                for &t in &basis_traces {
                    acc += (rest % p) as u64 * t as u64;
                    rest /= p;
                }
                (acc % p as u64) as u32
            })
            .collect();
        Ok(ctx)
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, constant term first, including the leading 1.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The fixed primitive element: the smallest index of multiplicative
    /// order `q - 1`.
    pub fn generator(&self) -> FieldElem {
        self.generator
    }

    pub fn trace_table(&self) -> &[u32] {
        &self.trace
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.q).map(FieldElem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (1..self.q).map(FieldElem)
    }

    /// Embeds `c mod p` as an element of the prime subfield.
    pub fn from_prime(&self, c: i64) -> FieldElem {
        FieldElem(c.rem_euclid(self.p as i64) as u32)
    }

    /// Coefficient vector of `x`, constant term first, length `m`.
    pub fn coeffs(&self, x: FieldElem) -> Vec<u32> {
        digits_of(x.0 as u64, self.p, self.m as usize)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> FieldElem {
        debug_assert!(coeffs.len() <= self.m as usize);
        FieldElem(index_of(coeffs, self.p) % self.q)
    }

    /// Element of `F_q` for the generator exponent `k`.
    #[inline]
    pub fn exp(&self, k: u64) -> FieldElem {
        FieldElem(self.exp[(k % (self.q as u64 - 1)) as usize])
    }

    /// Discrete log with respect to [`FieldCtx::generator`], `None` for zero.
    #[inline]
    pub fn log(&self, x: FieldElem) -> Option<u32> {
        (!x.is_zero()).then(|| self.log[x.0 as usize])
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let p = self.p;
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        for &w in &self.place {
            let d = (x % p + y % p) % p;
            out += d * w;
            x /= p;
            y /= p;
        }
        FieldElem(out)
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        let p = self.p;
        let mut x = a.0;
        let mut out = 0;
        for &w in &self.place {
            out += (p - x % p) % p * w;
            x /= p;
        }
        FieldElem(out)
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.is_zero() || b.is_zero() {
            return FieldElem::ZERO;
        }
        let order = self.q - 1;
        let k = self.log[a.0 as usize] + self.log[b.0 as usize];
        let k = if k >= order { k - order } else { k };
        FieldElem(self.exp[k as usize])
    }

    #[inline]
    pub fn square(&self, a: FieldElem) -> FieldElem {
        self.mul(a, a)
    }

    /// `a^e`, with `0^0 = 1`.
    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if e == 0 {
            return FieldElem::ONE;
        }
        if a.is_zero() {
            return FieldElem::ZERO;
        }
        let order = (self.q - 1) as u64;
        let k = (self.log[a.0 as usize] as u64 * (e % order)) % order;
        FieldElem(self.exp[k as usize])
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let order = self.q - 1;
        let k = (order - self.log[a.0 as usize]) % order;
        Ok(FieldElem(self.exp[k as usize]))
    }

    /// Absolute trace of `x`, as a value in `[0, p)`.
    #[inline]
    pub fn trace(&self, x: FieldElem) -> u32 {
        self.trace[x.0 as usize]
    }

    /// Absolute trace computed directly as `x + x^p + ... + x^{p^{m-1}}`.
    ///
    /// Works before the trace table exists, which is how the table is built.
    pub fn trace_frobenius(&self, x: FieldElem) -> u32 {
        let mut acc = FieldElem::ZERO;
        let mut conj = x;
        for _ in 0..self.m {
            acc = self.add(acc, conj);
            conj = self.pow(conj, self.p as u64);
        }
        assert!(acc.0 < self.p, "trace left the prime subfield");
        acc.0
    }

    /// Quadratic character: `0` at zero, `+1` on squares, `-1` otherwise.
    /// Evaluated as `x^{(q-1)/2}`.
    pub fn quad_char(&self, x: FieldElem) -> i32 {
        if x.is_zero() {
            return 0;
        }
        let r = self.pow(x, (self.q as u64 - 1) / 2);
        if r == FieldElem::ONE {
            1
        } else {
            debug_assert_eq!(r, self.from_prime(-1));
            -1
        }
    }

    /// Quadratic character of every element, indexed by canonical index.
    pub fn quad_char_table(&self) -> Vec<i32> {
        let mut table = vec![0i32; self.q as usize];
        for (k, &idx) in self.exp.iter().enumerate() {
            table[idx as usize] = if k % 2 == 0 { 1 } else { -1 };
        }
        table
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, x: FieldElem) -> Option<u64> {
        let k = self.log(x)? as u64;
        let n = (self.q - 1) as u64;
        Some(n / gcd(n, k))
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
