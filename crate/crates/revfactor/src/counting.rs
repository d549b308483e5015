//! Exact counting: census sequences, minimal linear recurrences, dominant
//! roots, and growth constants.
//!
//! The census r(n) — how many words of each length the automaton accepts —
//! is computed by pushing an occupancy vector through the live states with
//! big-integer entries, so every term is exact no matter how large.
//!
//! Recurrence discovery runs Berlekamp–Massey over several word-sized
//! prime fields, reconstructs integer coefficients by Chinese remaindering
//! (balanced lift, with a rational-reconstruction fallback), and then
//! *verifies the recurrence exactly* on every provided term before
//! reporting it. Unlucky primes can only shorten a modular recurrence, so
//! agreement of two primes plus exact verification makes the result
//! trustworthy; failures add fresh primes and retry.
//!
//! The dominant root of the characteristic polynomial is isolated by sign
//! bisection with exact integer arithmetic on dyadic rationals — no
//! floating point is involved until the caller asks for one — and the
//! growth constant `c` in `r(n) ~ c·αⁿ` is estimated from the last two
//! terms, with the difference between the two estimates reported as the
//! uncertainty.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::automata::Dfa;
use crate::error::Error;
use crate::Result;

/// Exact census terms `r(0), r(1), …`, with a tag describing where they
/// came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerSequence {
    terms: Vec<BigUint>,
    source: String,
}

impl IntegerSequence {
    pub fn new(terms: Vec<BigUint>, source: impl Into<String>) -> Self {
        IntegerSequence { terms, source: source.into() }
    }

    pub fn terms(&self) -> &[BigUint] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term(&self, n: usize) -> &BigUint {
        &self.terms[n]
    }

    pub fn source(&self) -> &str {
        &self.source
    }
}

/// Counts accepted words of each length `0..=n_max` exactly.
///
/// Iterates the state-occupancy vector over live states only; dead and
/// otherwise useless states never contribute. `r(n)` is the sum of the
/// occupancies of accepting states after `n` steps.
pub fn count_sequence(a: &Dfa, n_max: usize) -> IntegerSequence {
    let k = a.alphabet_size();
    let n_states = a.state_count();
    let live = a.live_states();
    let mut occupancy: Vec<BigUint> = vec![BigUint::zero(); n_states];
    if live[a.start()] {
        occupancy[a.start()] = BigUint::one();
    }
    let census = |occ: &[BigUint]| -> BigUint {
        let mut total = BigUint::zero();
        for s in 0..n_states {
            if a.is_accepting(s) {
                total += &occ[s];
            }
        }
        total
    };
    let mut terms = Vec::with_capacity(n_max + 1);
    terms.push(census(&occupancy));
    let mut next: Vec<BigUint> = vec![BigUint::zero(); n_states];
    for _ in 1..=n_max {
        for slot in next.iter_mut() {
            slot.set_zero();
        }
        for s in 0..n_states {
            if occupancy[s].is_zero() {
                continue;
            }
            for symbol in 0..k {
                let t = a.next(s, symbol);
                if live[t] {
                    next[t] += &occupancy[s];
                }
            }
        }
        std::mem::swap(&mut occupancy, &mut next);
        terms.push(census(&occupancy));
    }
    IntegerSequence::new(terms, "automaton census")
}

/// A linear recurrence `r(n) = c₁·r(n−1) + ⋯ + c_d·r(n−d)` with integer
/// coefficients, valid for every `n ≥ valid_from`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRecurrence {
    coeffs: Vec<BigInt>,
    valid_from: usize,
}

impl LinearRecurrence {
    /// Builds a recurrence directly from its coefficients `c₁…c_d`.
    pub fn new(coeffs: Vec<BigInt>, valid_from: usize) -> Self {
        LinearRecurrence { coeffs, valid_from }
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64(coeffs: &[i64], valid_from: usize) -> Self {
        LinearRecurrence {
            coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect(),
            valid_from,
        }
    }

    /// The order `d`.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficients `c₁…c_d`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Smallest index at which the recurrence is known to hold.
    pub fn valid_from(&self) -> usize {
        self.valid_from
    }

    /// The characteristic polynomial `X^d − c₁X^{d−1} − ⋯ − c_d`, as
    /// coefficients in descending degree order (leading 1 first).
    pub fn characteristic(&self) -> Vec<BigInt> {
        let mut poly = Vec::with_capacity(self.coeffs.len() + 1);
        poly.push(BigInt::one());
        for c in &self.coeffs {
            poly.push(-c);
        }
        poly
    }

    /// Whether `terms[n] = Σ cᵢ·terms[n−i]` holds at index `n`.
    pub fn holds_at(&self, terms: &[BigUint], n: usize) -> bool {
        let d = self.coeffs.len();
        if n < d || n >= terms.len() {
            return false;
        }
        let mut sum = BigInt::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            sum += c * BigInt::from(terms[n - 1 - i].clone());
        }
        sum == BigInt::from(terms[n].clone())
    }

    /// Whether the recurrence holds at every index in `valid_from..terms.len()`.
    pub fn holds_on(&self, terms: &[BigUint]) -> bool {
        (self.valid_from.max(self.coeffs.len())..terms.len()).all(|n| self.holds_at(terms, n))
    }
}

// ---------------------------------------------------------------------------
// Modular arithmetic helpers (fixed word-sized primes, deterministic).

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (u128::from(a) * u128::from(b) % u128::from(p)) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut result = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    result
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller–Rabin for 64-bit integers (the listed witness set
/// decides primality exactly below 2^64).
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &small in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == small {
            return true;
        }
        if n % small == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A fixed, reproducible stream of 62-bit primes.
struct PrimeStream {
    candidate: u64,
}

impl PrimeStream {
    fn new() -> Self {
        PrimeStream { candidate: (1 << 62) + 1 }
    }

    fn next_prime(&mut self) -> u64 {
        loop {
            let c = self.candidate;
            self.candidate += 2;
            if is_prime_u64(c) {
                return c;
            }
        }
    }
}

/// Berlekamp–Massey over `Z/p`: the shortest linear recurrence generating
/// `seq`, returned as coefficients `c₁…c_L` with
/// `seq[n] = Σ cᵢ·seq[n−i] (mod p)` for `n ≥ L`.
fn berlekamp_massey_mod(seq: &[u64], p: u64) -> Vec<u64> {
    let mut connection = vec![1u64]; // C(x) with C(0) = 1
    let mut backup = vec![1u64]; // B(x), the connection before the last resize
    let mut l = 0usize;
    let mut gap = 1usize; // steps since the last resize
    let mut last_discrepancy = 1u64;
    for n in 0..seq.len() {
        let mut discrepancy = seq[n] % p;
        for i in 1..=l {
            discrepancy = (discrepancy + mul_mod(connection[i], seq[n - i] % p, p)) % p;
        }
        if discrepancy == 0 {
            gap += 1;
            continue;
        }
        let scale = mul_mod(discrepancy, inv_mod(last_discrepancy, p), p);
        if 2 * l <= n {
            let snapshot = connection.clone();
            if connection.len() < backup.len() + gap {
                connection.resize(backup.len() + gap, 0);
            }
            for (i, &b) in backup.iter().enumerate() {
                let delta = mul_mod(scale, b, p);
                connection[i + gap] = (connection[i + gap] + p - delta) % p;
            }
            l = n + 1 - l;
            backup = snapshot;
            last_discrepancy = discrepancy;
            gap = 1;
        } else {
            if connection.len() < backup.len() + gap {
                connection.resize(backup.len() + gap, 0);
            }
            for (i, &b) in backup.iter().enumerate() {
                let delta = mul_mod(scale, b, p);
                connection[i + gap] = (connection[i + gap] + p - delta) % p;
            }
            gap += 1;
        }
    }
    // seq[n] = −Σ C_i seq[n−i]: flip signs of C₁…C_L.
    (1..=l).map(|i| (p - connection[i] % p) % p).collect()
}

/// Chinese remaindering with a balanced (symmetric) lift: the integer of
/// least absolute value congruent to every `residue` mod its prime.
fn crt_balanced(residues: &[(u64, u64)]) -> BigInt {
    let mut x = BigUint::zero();
    let mut modulus = BigUint::one();
    for &(r, p) in residues {
        let p_big = BigUint::from(p);
        let x_mod_p = (&x % &p_big).to_u64().expect("residue fits");
        let m_mod_p = (&modulus % &p_big).to_u64().expect("residue fits");
        let diff = (r + p - x_mod_p % p) % p;
        let t = mul_mod(diff, inv_mod(m_mod_p, p), p);
        x += &modulus * BigUint::from(t);
        modulus *= p_big;
    }
    if &x * 2u32 > modulus {
        BigInt::from(x) - BigInt::from(modulus)
    } else {
        BigInt::from(x)
    }
}

/// Rational reconstruction of `residue` mod `modulus`: the unique fraction
/// `n/d` with `|n|, d ≤ sqrt(modulus/2)`, if one exists.
fn rational_reconstruct(residue: &BigUint, modulus: &BigUint) -> Option<(BigInt, BigInt)> {
    let bound = (modulus / 2u32).sqrt();
    let mut r0 = BigInt::from(modulus.clone());
    let mut r1 = BigInt::from(residue.clone());
    let mut t0 = BigInt::zero();
    let mut t1 = BigInt::one();
    while r1.magnitude() > &bound {
        if r1.is_zero() {
            return None;
        }
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.magnitude() > &bound {
        return None;
    }
    if t1.is_negative() {
        Some((-r1, -t1))
    } else {
        Some((r1, t1))
    }
}

/// How many primes the recurrence search will try before giving up.
const MAX_PRIMES: usize = 16;

/// Minimum number of tail terms accepted at all.
const MIN_TAIL: usize = 8;

/// Required surplus of tail terms beyond twice the candidate order.
///
/// A window of exactly `2d` terms can *always* be fitted by an order-`d`
/// recurrence (solve the Hankel system), so such a fit certifies nothing.
/// Demanding `2d + 8` terms forces every reported recurrence to survive at
/// least eight exact integer checks beyond the fitted window.
const SPARE_CHECKS: usize = 8;

/// Finds the minimal integer linear recurrence satisfied by the tail
/// `seq[tail_start..]`, verified exactly on every provided term.
///
/// `valid_from` of the result is extended greedily backward below
/// `tail_start` for as long as the recurrence keeps holding. Fails with
/// [`Error::InsufficientTerms`] when the tail is too short to say anything
/// and with [`Error::NoRecurrenceFound`] when the tail cannot supply
/// [`SPARE_CHECKS`] spare terms beyond twice the candidate order, or when
/// verification keeps failing.
pub fn find_recurrence(seq: &IntegerSequence, tail_start: usize) -> Result<LinearRecurrence> {
    find_recurrence_bounded(seq, tail_start, None)
}

/// Like [`find_recurrence`], refusing recurrences of order above `max_order`.
pub fn find_recurrence_bounded(
    seq: &IntegerSequence,
    tail_start: usize,
    max_order: Option<usize>,
) -> Result<LinearRecurrence> {
    let terms = seq.terms();
    if tail_start >= terms.len() {
        return Err(Error::InsufficientTerms(format!(
            "tail start {tail_start} is beyond the {} provided terms",
            terms.len()
        )));
    }
    let tail = &terms[tail_start..];
    if tail.len() < MIN_TAIL {
        return Err(Error::InsufficientTerms(format!(
            "only {} tail terms; at least {MIN_TAIL} are needed",
            tail.len()
        )));
    }

    let mut stream = PrimeStream::new();
    let mut samples: Vec<(u64, Vec<u64>)> = Vec::new();
    while samples.len() < MAX_PRIMES {
        // Two fresh primes per round.
        for _ in 0..2 {
            let p = stream.next_prime();
            let reduced: Vec<u64> = tail
                .iter()
                .map(|t| (t % BigUint::from(p)).to_u64().expect("residue fits"))
                .collect();
            let coeffs = berlekamp_massey_mod(&reduced, p);
            samples.push((p, coeffs));
        }
        let order = samples
            .iter()
            .map(|(_, c)| c.len())
            .max()
            .expect("at least one sample");
        if 2 * order + SPARE_CHECKS > tail.len() {
            return Err(Error::NoRecurrenceFound(format!(
                "candidate order {order} needs at least {} tail terms, only {} given",
                2 * order + SPARE_CHECKS,
                tail.len()
            )));
        }
        if let Some(limit) = max_order {
            if order > limit {
                return Err(Error::NoRecurrenceFound(format!(
                    "candidate order {order} exceeds the requested bound {limit}"
                )));
            }
        }
        let agreeing: Vec<&(u64, Vec<u64>)> =
            samples.iter().filter(|(_, c)| c.len() == order).collect();
        if agreeing.len() < 2 {
            continue; // a lone maximal sample might itself be unlucky
        }
        let coeffs: Vec<BigInt> = (0..order)
            .map(|i| {
                let residues: Vec<(u64, u64)> =
                    agreeing.iter().map(|(p, c)| (c[i], *p)).collect();
                crt_balanced(&residues)
            })
            .collect();
        if let Some(result) = verified(terms, tail_start, coeffs) {
            return Ok(result);
        }
        // Balanced lift failed; try rational reconstruction as a fallback.
        // Integer census sequences always have integer recurrences, so a
        // non-integral reconstruction just means "not enough primes yet".
        let modulus: BigUint = agreeing
            .iter()
            .map(|(p, _)| BigUint::from(*p))
            .product();
        let rational: Option<Vec<BigInt>> = (0..order)
            .map(|i| {
                let residues: Vec<(u64, u64)> =
                    agreeing.iter().map(|(p, c)| (c[i], *p)).collect();
                let lifted = crt_balanced(&residues);
                let residue = lifted.mod_floor_biguint(&modulus);
                rational_reconstruct(&residue, &modulus)
                    .filter(|(_, den)| den.is_one())
                    .map(|(num, _)| num)
            })
            .collect();
        if let Some(coeffs) = rational {
            if let Some(result) = verified(terms, tail_start, coeffs) {
                return Ok(result);
            }
        }
    }
    Err(Error::NoRecurrenceFound(format!(
        "verification failed with {MAX_PRIMES} primes"
    )))
}

/// Exact verification plus greedy backward extension of `valid_from`.
fn verified(terms: &[BigUint], tail_start: usize, coeffs: Vec<BigInt>) -> Option<LinearRecurrence> {
    let order = coeffs.len();
    let candidate = LinearRecurrence { coeffs, valid_from: tail_start + order };
    if !candidate.holds_on(terms) {
        return None;
    }
    let mut valid_from = tail_start + order;
    while valid_from > order && candidate.holds_at(terms, valid_from - 1) {
        valid_from -= 1;
    }
    Some(LinearRecurrence { valid_from, ..candidate })
}

trait ModFloor {
    fn mod_floor_biguint(&self, modulus: &BigUint) -> BigUint;
}

impl ModFloor for BigInt {
    fn mod_floor_biguint(&self, modulus: &BigUint) -> BigUint {
        let m = BigInt::from(modulus.clone());
        let mut r = self % &m;
        if r.is_negative() {
            r += &m;
        }
        r.magnitude().clone()
    }
}

// ---------------------------------------------------------------------------
// Dominant-root isolation by exact dyadic bisection.

/// An enclosure `lo/2^exp ≤ root ≤ hi/2^exp` of a real polynomial root.
#[derive(Clone, Debug)]
pub struct RealRootEnclosure {
    lo: BigInt,
    hi: BigInt,
    exp: u32,
}

impl RealRootEnclosure {
    /// Midpoint as a float.
    pub fn to_f64(&self) -> f64 {
        let mid = &self.lo + &self.hi;
        big_to_f64(&mid) / 2f64.powi(self.exp as i32 + 1)
    }

    /// Decimal rendering of the midpoint with `digits` places after the
    /// point (accurate to the enclosure width).
    pub fn decimal(&self, digits: u32) -> String {
        let mid = &self.lo + &self.hi; // value = mid / 2^(exp+1)
        assert!(!mid.is_negative(), "only positive roots are rendered");
        let scale = BigInt::from(10u32).pow(digits);
        let scaled = (mid * scale) >> (self.exp + 1);
        let text = scaled.to_string();
        let point = digits as usize;
        if text.len() <= point {
            let mut padded = String::from("0.");
            for _ in 0..point - text.len() {
                padded.push('0');
            }
            padded.push_str(&text);
            padded
        } else {
            let (int_part, frac_part) = text.split_at(text.len() - point);
            format!("{int_part}.{frac_part}")
        }
    }

    /// Width `hi − lo` of the enclosure as a float.
    pub fn width(&self) -> f64 {
        big_to_f64(&(&self.hi - &self.lo)) / 2f64.powi(self.exp as i32)
    }

    /// Lower endpoint as a float.
    pub fn lo_f64(&self) -> f64 {
        big_to_f64(&self.lo) / 2f64.powi(self.exp as i32)
    }

    /// Upper endpoint as a float.
    pub fn hi_f64(&self) -> f64 {
        big_to_f64(&self.hi) / 2f64.powi(self.exp as i32)
    }
}

fn big_to_f64(x: &BigInt) -> f64 {
    x.to_f64().expect("finite conversion")
}

/// Sign of `p(num / 2^exp)` for a polynomial given in descending-degree
/// coefficients, evaluated exactly in integers.
fn sign_at_dyadic(coeffs: &[BigInt], num: &BigInt, exp: u32) -> i32 {
    // p(x)·2^(exp·d) = Σ coeffs[i]·num^(d−i)·2^(exp·i), by Horner.
    let mut acc = coeffs[0].clone();
    for (i, c) in coeffs.iter().enumerate().skip(1) {
        acc = acc * num + (c << (exp * i as u32));
    }
    match acc.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

/// Grid resolution for the downward scan: steps of `2^-8`.
const SCAN_EXP: u32 = 8;

/// Locates the largest real root of the characteristic polynomial of
/// `rec` in the interval `(1, bound]`, to `precision` decimal digits.
///
/// Scans downward from `bound` on a grid of width `2^-8` for the first
/// sign change, then bisects with exact integer evaluation at dyadic
/// points. A root of even multiplicity produces no sign change and would
/// be missed; callers working with census sequences cross-check against
/// empirical term ratios (see [`check_root_against_ratios`]). Fails with
/// [`Error::NoRealRootAboveOne`] when no sign change exists above 1.
pub fn largest_real_root(
    rec: &LinearRecurrence,
    precision: u32,
    bound: u32,
) -> Result<RealRootEnclosure> {
    let coeffs = rec.characteristic();
    if rec.order() == 0 || bound <= 1 {
        return Err(Error::NoRealRootAboveOne);
    }
    let step_one = BigInt::from(1u32) << SCAN_EXP; // the value 1 on the grid
    let top = BigInt::from(bound) << SCAN_EXP;

    // Downward scan for the first sign change.
    let mut bracket: Option<(BigInt, BigInt)> = None; // (lo_num, hi_num) at SCAN_EXP
    let mut num = top.clone();
    let mut previous_sign = sign_at_dyadic(&coeffs, &num, SCAN_EXP);
    if previous_sign == 0 {
        // The bound itself is a root (necessarily > 1 here).
        return Ok(bisect_to_precision(
            &coeffs,
            num.clone(),
            num,
            SCAN_EXP,
            precision,
        ));
    }
    while num > step_one {
        num -= 1;
        let sign = sign_at_dyadic(&coeffs, &num, SCAN_EXP);
        if sign == 0 {
            if num == step_one {
                break; // the root is exactly 1: not above one
            }
            return Ok(bisect_to_precision(
                &coeffs,
                num.clone(),
                num,
                SCAN_EXP,
                precision,
            ));
        }
        if sign != previous_sign {
            bracket = Some((num.clone(), &num + 1));
            break;
        }
        previous_sign = sign;
    }
    let (lo, hi) = bracket.ok_or(Error::NoRealRootAboveOne)?;
    Ok(bisect_to_precision(&coeffs, lo, hi, SCAN_EXP, precision))
}

/// Shrinks `[lo, hi] / 2^exp` by sign bisection until the width is at most
/// `10^-precision`.
fn bisect_to_precision(
    coeffs: &[BigInt],
    mut lo: BigInt,
    mut hi: BigInt,
    mut exp: u32,
    precision: u32,
) -> RealRootEnclosure {
    if lo == hi {
        return RealRootEnclosure { lo, hi, exp };
    }
    // Need 2^-(final exp) ≤ 10^-precision, i.e. final exp ≥ bits(10^precision).
    let target_exp = BigUint::from(10u32).pow(precision).bits().max(u64::from(exp)) as u32;
    let mut lo_sign = sign_at_dyadic(coeffs, &lo, exp);
    debug_assert_ne!(lo_sign, 0);
    while exp < target_exp {
        lo <<= 1;
        hi <<= 1;
        exp += 1;
        let mid = (&lo + &hi) >> 1;
        let mid_sign = sign_at_dyadic(coeffs, &mid, exp);
        if mid_sign == 0 {
            return RealRootEnclosure { lo: mid.clone(), hi: mid, exp };
        }
        if mid_sign == lo_sign {
            lo = mid;
            lo_sign = mid_sign;
        } else {
            hi = mid;
        }
    }
    RealRootEnclosure { lo, hi, exp }
}

/// A growth-constant estimate `c` with its empirical uncertainty.
#[derive(Clone, Copy, Debug)]
pub struct GrowthConstant {
    pub value: f64,
    pub uncertainty: f64,
}

/// Natural log of a big integer, stable far beyond the `f64` range.
fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits easily").ln();
    }
    let shift = bits - 53;
    let top = (x >> shift).to_f64().expect("53 bits fit");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Estimates `c` in `r(n) ~ c·αⁿ` from the last two terms of `seq`.
///
/// The estimate is `r(N)/α^N` at the largest index, and the uncertainty is
/// the difference from the same estimate one index earlier. Fails with
/// [`Error::NotConverged`] when the uncertainty exceeds `tolerance` or the
/// terms vanish.
pub fn growth_constant(
    seq: &IntegerSequence,
    alpha: f64,
    tolerance: f64,
) -> Result<GrowthConstant> {
    assert!(alpha.is_finite() && alpha > 0.0, "alpha must be positive");
    let terms = seq.terms();
    if terms.len() < 3 {
        return Err(Error::NotConverged(format!(
            "only {} terms; at least 3 are needed",
            terms.len()
        )));
    }
    let n = terms.len() - 1;
    if terms[n].is_zero() || terms[n - 1].is_zero() {
        return Err(Error::NotConverged(
            "census vanishes at the end of the sequence".into(),
        ));
    }
    let ln_alpha = alpha.ln();
    let estimate = |i: usize| (ln_biguint(&terms[i]) - i as f64 * ln_alpha).exp();
    let current = estimate(n);
    let previous = estimate(n - 1);
    let uncertainty = (current - previous).abs();
    if uncertainty > tolerance {
        return Err(Error::NotConverged(format!(
            "successive estimates {previous} and {current} differ by {uncertainty}, \
             more than the tolerance {tolerance}"
        )));
    }
    Ok(GrowthConstant { value: current, uncertainty })
}

/// Cross-checks a claimed dominant root against the empirical term ratios
/// `r(N)/r(N−1)`.
///
/// The claimed `alpha` must agree with the last ratio to within ten times
/// the gap between the last two ratios (floored at `1e-9` to keep exactly
/// periodic sequences from demanding the impossible).
pub fn check_root_against_ratios(seq: &IntegerSequence, alpha: f64) -> Result<()> {
    let terms = seq.terms();
    if terms.len() < 3 {
        return Err(Error::NotConverged(format!(
            "only {} terms; at least 3 are needed",
            terms.len()
        )));
    }
    let n = terms.len() - 1;
    if terms[n].is_zero() || terms[n - 1].is_zero() || terms[n - 2].is_zero() {
        return Err(Error::NotConverged(
            "census vanishes at the end of the sequence".into(),
        ));
    }
    let ratio = |i: usize| (ln_biguint(&terms[i]) - ln_biguint(&terms[i - 1])).exp();
    let last = ratio(n);
    let gap = (last - ratio(n - 1)).abs();
    let tolerance = (10.0 * gap).max(1e-9);
    if (alpha - last).abs() > tolerance {
        return Err(Error::NotConverged(format!(
            "claimed root {alpha} is {} away from the empirical ratio {last}, \
             beyond the allowance {tolerance}",
            (alpha - last).abs()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::avoidance::{brute_count, build_direct, AvoidanceSpec};

    fn census(k: usize, ell: usize, n_max: usize) -> IntegerSequence {
        let spec = AvoidanceSpec::new(k, ell).unwrap();
        let (dfa, _) = build_direct(&spec).unwrap();
        count_sequence(&dfa, n_max)
    }

    fn as_u64(seq: &IntegerSequence, n: usize) -> u64 {
        seq.term(n).to_u64().unwrap()
    }

    #[test]
    fn census_of_fibonacci_flavored_language() {
        let seq = census(3, 3, 10);
        let expected = [1u64, 3, 9, 18, 30, 48, 78, 126, 204, 330, 534];
        for (n, &e) in expected.iter().enumerate() {
            assert_eq!(as_u64(&seq, n), e, "term {n}");
        }
    }

    #[test]
    fn census_matches_brute_force() {
        let spec = AvoidanceSpec::new(2, 3).unwrap();
        let (dfa, _) = build_direct(&spec).unwrap();
        let seq = count_sequence(&dfa, 14);
        for n in 0..=14 {
            assert_eq!(as_u64(&seq, n), brute_count(&spec, n).unwrap(), "term {n}");
        }
    }

    #[test]
    fn census_of_four_symbol_pairs() {
        let seq = census(4, 2, 16);
        let expected = [
            1u64, 4, 12, 24, 48, 96, 168, 264, 456, 720, 1056, 1656, 2520, 3600, 5352, 7944,
            11256,
        ];
        for (n, &e) in expected.iter().enumerate() {
            assert_eq!(as_u64(&seq, n), e, "term {n}");
        }
    }

    #[test]
    fn recurrence_discovery_on_the_fibonacci_flavored_census() {
        let seq = census(3, 3, 40);
        let rec = find_recurrence(&seq, 10).unwrap();
        assert_eq!(rec.order(), 2);
        assert_eq!(rec.coeffs(), &[BigInt::from(1), BigInt::from(1)]);
        assert!(rec.valid_from() <= 5);
        assert!(rec.holds_on(seq.terms()));
        // r(4) = 30 ≠ r(3) + r(2) = 27, so the extension stops exactly at 5.
        assert_eq!(rec.valid_from(), 5);
    }

    #[test]
    fn recurrence_discovery_on_the_four_symbol_census() {
        let seq = census(4, 2, 80);
        let rec = find_recurrence(&seq, 30).unwrap();
        assert_eq!(rec.order(), 12);
        let expected: Vec<BigInt> = [1i64, 0, 5, -3, -2, -8, 1, 6, 5, 2, -4, -2]
            .iter()
            .map(|&c| BigInt::from(c))
            .collect();
        assert_eq!(rec.coeffs(), expected.as_slice());
        assert!(rec.valid_from() <= 17);
        assert!(rec.holds_on(seq.terms()));
    }

    #[test]
    fn recurrence_discovery_handles_transient_heads() {
        // 7, 100, 3, then powers of 2: order 1, coefficient 2, valid from 4.
        let mut terms: Vec<BigUint> = vec![7u32.into(), 100u32.into(), 3u32.into()];
        let mut v = BigUint::from(5u32);
        for _ in 0..30 {
            terms.push(v.clone());
            v *= 2u32;
        }
        let seq = IntegerSequence::new(terms, "test");
        let rec = find_recurrence(&seq, 6).unwrap();
        assert_eq!(rec.order(), 1);
        assert_eq!(rec.coeffs(), &[BigInt::from(2)]);
        assert_eq!(rec.valid_from(), 4);
    }

    #[test]
    fn recurrence_of_an_eventually_zero_census_is_empty() {
        let seq = census(2, 2, 20); // finite language: 1, 2, 2, 0, 0, …
        let rec = find_recurrence(&seq, 5).unwrap();
        assert_eq!(rec.order(), 0);
        assert_eq!(rec.valid_from(), 3);
        assert!(matches!(
            largest_real_root(&rec, 10, 2),
            Err(Error::NoRealRootAboveOne)
        ));
    }

    #[test]
    fn recurrence_search_reports_failure_modes() {
        let seq = IntegerSequence::new(vec![BigUint::from(1u32); 3], "test");
        assert!(matches!(
            find_recurrence(&seq, 1),
            Err(Error::InsufficientTerms(_))
        ));
        // Factorials satisfy no fixed linear recurrence.
        let mut terms = vec![BigUint::one()];
        for i in 1u32..40 {
            let last = terms.last().unwrap().clone();
            terms.push(last * i);
        }
        let seq = IntegerSequence::new(terms, "test");
        assert!(matches!(
            find_recurrence(&seq, 0),
            Err(Error::NoRecurrenceFound(_))
        ));
    }

    #[test]
    fn discovered_order_is_minimal_modulo_independent_primes() {
        let seq = census(3, 3, 40);
        let rec = find_recurrence(&seq, 10).unwrap();
        let tail: Vec<BigUint> = seq.terms()[10..].to_vec();
        let mut stream = PrimeStream::new();
        for _ in 0..2 {
            let p = stream.next_prime();
            let reduced: Vec<u64> = tail
                .iter()
                .map(|t| (t % BigUint::from(p)).to_u64().unwrap())
                .collect();
            assert_eq!(
                berlekamp_massey_mod(&reduced, p).len(),
                rec.order(),
                "no shorter recurrence exists modulo {p}"
            );
        }
    }

    #[test]
    fn golden_ratio_from_its_recurrence() {
        let rec = LinearRecurrence::from_i64(&[1, 1], 2);
        let root = largest_real_root(&rec, 15, 2).unwrap();
        assert!((root.to_f64() - 1.618033988749895).abs() < 1e-12);
        assert!(root.width() <= 1e-15);
    }

    #[test]
    fn quartic_root_matches_the_pinned_value() {
        // X⁴ = 2X + 1, dominant root 1.395336944…
        let rec = LinearRecurrence::from_i64(&[0, 0, 2, 1], 4);
        let root = largest_real_root(&rec, 12, 4).unwrap();
        assert!((root.to_f64() - 1.395336944).abs() < 1e-6);
    }

    #[test]
    fn exact_roots_are_detected_on_the_grid() {
        // X − 2: the bound itself is the root.
        let rec = LinearRecurrence::from_i64(&[2], 1);
        let root = largest_real_root(&rec, 10, 2).unwrap();
        assert_eq!(root.to_f64(), 2.0);
        // X − 1 has no root above one.
        let rec = LinearRecurrence::from_i64(&[1], 1);
        assert!(matches!(
            largest_real_root(&rec, 10, 2),
            Err(Error::NoRealRootAboveOne)
        ));
    }

    #[test]
    fn enclosure_endpoints_straddle_the_root() {
        let rec = LinearRecurrence::from_i64(&[1, 1], 2);
        let root = largest_real_root(&rec, 20, 2).unwrap();
        let coeffs = rec.characteristic();
        let lo_sign = sign_at_dyadic(&coeffs, &root.lo, root.exp);
        let hi_sign = sign_at_dyadic(&coeffs, &root.hi, root.exp);
        assert_eq!(lo_sign * hi_sign, -1, "signs must differ across the root");
        assert!(root.lo_f64() <= root.to_f64() && root.to_f64() <= root.hi_f64());
    }

    #[test]
    fn decimal_rendering_is_faithful() {
        let rec = LinearRecurrence::from_i64(&[1, 1], 2);
        let root = largest_real_root(&rec, 30, 2).unwrap();
        let text = root.decimal(20);
        assert!(text.starts_with("1.6180339887498948482"), "got {text}");
    }

    #[test]
    fn growth_constant_of_the_fibonacci_flavored_census() {
        let seq = census(3, 3, 40);
        let rec = find_recurrence(&seq, 10).unwrap();
        let alpha = largest_real_root(&rec, 15, 3).unwrap().to_f64();
        let constant = growth_constant(&seq, alpha, 1e-6).unwrap();
        // 6·φ/√5: the Binet coefficient of 6·F(n+1).
        let expected = 6.0 * 1.618033988749895 / 5f64.sqrt();
        assert!((constant.value - expected).abs() < 1e-4, "got {}", constant.value);
        assert!(constant.uncertainty < 1e-6);
        check_root_against_ratios(&seq, alpha).unwrap();
    }

    #[test]
    fn growth_constant_reports_non_convergence() {
        let seq = census(3, 3, 6);
        assert!(matches!(
            growth_constant(&seq, 1.618033988749895, 1e-12),
            Err(Error::NotConverged(_))
        ));
    }
}
