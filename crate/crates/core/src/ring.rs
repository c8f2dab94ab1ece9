//! Finite commutative rings `Z_n` and their finite products.
//!
//! Every homomorphism out of `Z_m` is `x -> x·e` for an idempotent `e` of the
//! target with `m·e = 0`, so homomorphisms are stored as that unit image.
//! Ideals of `Z_n` are `dZ_n` for a divisor `d`, canonicalized by `d`
//! (`d = 1` is the whole ring, `d = n` the zero ideal); ideals of a product
//! are componentwise.
//!
//! Spectra of these rings are antichains, so they only exercise lying over,
//! incomparability and unitarity. Chain-rich behaviour is tested on posets.

use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use thiserror::Error;

use crate::poset::Poset;
use crate::spectral::{SpectralMap, Target};
use crate::verdict::{Counterexample, Statement, Verdict};

mod parse;

pub use parse::{parse_hom, parse_ring, ParseError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),
    #[error("a product needs at least one factor")]
    EmptyProduct,
    #[error("unit image has {found} components but the target has {expected} factors")]
    ArityMismatch { expected: usize, found: usize },
    #[error("unit image {0} is not idempotent")]
    NotIdempotent(String),
    #[error("{source_modulus}·e = {product} is not zero in the target")]
    CharacteristicMismatch { source_modulus: u64, product: String },
    #[error("the homomorphism is not unitary")]
    NotUnitary,
    #[error("ideal {0} is not valid for this ring")]
    InvalidIdeal(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// `Zn(n)` or a flattened product of such factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingExpr {
    Zn(u64),
    /// Moduli of the factors; never nested.
    Product(Vec<u64>),
}

impl RingExpr {
    pub fn zn(n: u64) -> Result<RingExpr, RingError> {
        if n < 2 {
            return Err(RingError::InvalidModulus(n));
        }
        Ok(RingExpr::Zn(n))
    }

    /// Product of `factors`, flattening nested products.
    pub fn product(factors: Vec<RingExpr>) -> Result<RingExpr, RingError> {
        if factors.is_empty() {
            return Err(RingError::EmptyProduct);
        }
        let moduli = factors.iter().flat_map(|f| f.moduli().to_vec()).collect();
        Ok(RingExpr::Product(moduli))
    }

    pub fn moduli(&self) -> &[u64] {
        match self {
            RingExpr::Zn(n) => std::slice::from_ref(n),
            RingExpr::Product(ms) => ms,
        }
    }

    pub fn arity(&self) -> usize {
        self.moduli().len()
    }

    pub fn one(&self) -> Element {
        Element(vec![1; self.arity()])
    }

    pub fn zero_ideal(&self) -> IdealRepr {
        IdealRepr(self.moduli().to_vec())
    }

    pub fn full_ideal(&self) -> IdealRepr {
        IdealRepr(vec![1; self.arity()])
    }

    fn check_ideal(&self, ideal: &IdealRepr) -> Result<(), RingError> {
        let ok = ideal.0.len() == self.arity()
            && ideal.0.iter().zip(self.moduli()).all(|(&d, &n)| d >= 1 && n % d == 0);
        if ok {
            Ok(())
        } else {
            Err(RingError::InvalidIdeal(format!("{ideal:?}")))
        }
    }
}

impl fmt::Display for RingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingExpr::Zn(n) => write!(f, "Zn({n})"),
            RingExpr::Product(ms) => {
                let parts: Vec<String> = ms.iter().map(|n| format!("Zn({n})")).collect();
                write!(f, "Product({})", parts.join(","))
            }
        }
    }
}

/// An element as one residue per factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element(pub Vec<u64>);

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            write!(f, "{}", self.0[0])
        } else {
            let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
            write!(f, "({})", parts.join(","))
        }
    }
}

/// An ideal as one divisor per factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdealRepr(pub Vec<u64>);

impl IdealRepr {
    pub fn is_full(&self) -> bool {
        self.0.iter().all(|&d| d == 1)
    }

    /// `self ⊆ other`, componentwise `dZ_n ⊆ d'Z_n` iff `d' | d`.
    pub fn is_contained_in(&self, other: &IdealRepr) -> bool {
        self.0.iter().zip(&other.0).all(|(&d, &e)| d % e == 0)
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Prime divisors of `n` in ascending order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_prime(n: u64) -> bool {
    n >= 2 && prime_divisors(n) == [n]
}

/// Prime ideals: exactly one component `pZ_n` with `p` prime, every other
/// component the full factor.
pub fn is_prime_ideal(ring: &RingExpr, ideal: &IdealRepr) -> bool {
    if ring.check_ideal(ideal).is_err() {
        return false;
    }
    let proper: Vec<u64> = ideal.0.iter().copied().filter(|&d| d != 1).collect();
    proper.len() == 1 && is_prime(proper[0])
}

fn component_label(d: u64, n: u64) -> String {
    if d == 1 {
        format!("Z_{n}")
    } else {
        format!("{d}Z_{n}")
    }
}

pub fn ideal_label(ring: &RingExpr, ideal: &IdealRepr) -> String {
    ideal
        .0
        .iter()
        .zip(ring.moduli())
        .map(|(&d, &n)| component_label(d, n))
        .collect::<Vec<_>>()
        .join(" x ")
}

/// Prime ideals in spectrum order: by factor, then by prime.
pub fn spec_primes(ring: &RingExpr) -> Vec<IdealRepr> {
    let moduli = ring.moduli();
    let mut out = Vec::new();
    for (i, &n) in moduli.iter().enumerate() {
        for p in prime_divisors(n) {
            let mut comps = vec![1; moduli.len()];
            comps[i] = p;
            out.push(IdealRepr(comps));
        }
    }
    out
}

/// The prime spectrum as a labeled poset (always an antichain).
pub fn spec(ring: &RingExpr) -> Poset {
    let labels: Vec<String> = spec_primes(ring).iter().map(|i| ideal_label(ring, i)).collect();
    Poset::antichain(&labels).expect("prime labels are distinct")
}

/// `Z_m -> target`, `x -> x·e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingHom {
    source: u64,
    target: RingExpr,
    unit_image: Element,
}

impl fmt::Display for RingHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "hom(m={}, target={}, e={})",
            self.source, self.target, self.unit_image
        )
    }
}

/// Validates `x -> x·e` as a ring homomorphism `Z_m -> target`. Residues are
/// reduced modulo their factor.
pub fn make_hom(m: u64, target: RingExpr, e: Element) -> Result<RingHom, RingError> {
    if m < 2 {
        return Err(RingError::InvalidModulus(m));
    }
    let moduli = target.moduli();
    if e.0.len() != moduli.len() {
        return Err(RingError::ArityMismatch {
            expected: moduli.len(),
            found: e.0.len(),
        });
    }
    let e = Element(e.0.iter().zip(moduli).map(|(&x, &n)| x % n).collect());
    if e.0.iter().zip(moduli).any(|(&x, &n)| x * x % n != x) {
        return Err(RingError::NotIdempotent(e.to_string()));
    }
    let scaled = Element(e.0.iter().zip(moduli).map(|(&x, &n)| (m % n) * x % n).collect());
    if scaled.0.iter().any(|&x| x != 0) {
        return Err(RingError::CharacteristicMismatch {
            source_modulus: m,
            product: scaled.to_string(),
        });
    }
    Ok(RingHom {
        source: m,
        target,
        unit_image: e,
    })
}

/// Every valid unit image for `Z_m -> target`, lexicographically.
pub fn valid_unit_images(m: u64, target: &RingExpr) -> Vec<Element> {
    let per_factor: Vec<Vec<u64>> = target
        .moduli()
        .iter()
        .map(|&n| (0..n).filter(|&x| x * x % n == x && ((m % n) * x).is_multiple_of(n)).collect())
        .collect();
    let mut out = vec![Vec::new()];
    for options in &per_factor {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u64>| {
                options.iter().map(move |&x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Element).collect()
}

impl RingHom {
    pub fn source(&self) -> u64 {
        self.source
    }

    pub fn source_ring(&self) -> RingExpr {
        RingExpr::Zn(self.source)
    }

    pub fn target(&self) -> &RingExpr {
        &self.target
    }

    pub fn unit_image(&self) -> &Element {
        &self.unit_image
    }

    /// Maps 1 to 1.
    pub fn is_unitary(&self) -> bool {
        self.unit_image.0.iter().all(|&x| x == 1)
    }

    /// The divisor `L` of `m` with `LZ_m = {x : x·e ∈ q}`.
    ///
    /// Componentwise, `x·e_i ∈ d_iZ_n` iff `d_i / gcd(d_i, e_i)` divides `x`.
    pub fn preimage_divisor(&self, q: &IdealRepr) -> Result<u64, RingError> {
        self.target.check_ideal(q)?;
        let l = q
            .0
            .iter()
            .zip(&self.unit_image.0)
            .fold(1, |acc, (&d, &e)| lcm(acc, d / gcd(d, e)));
        debug_assert_eq!(self.source % l, 0);
        Ok(l)
    }

    pub fn preimage_ideal(&self, q: &IdealRepr) -> Result<IdealRepr, RingError> {
        Ok(IdealRepr(vec![self.preimage_divisor(q)?]))
    }

    /// `{x : x·e = 0}`.
    pub fn kernel(&self) -> IdealRepr {
        self.preimage_ideal(&self.target.zero_ideal())
            .expect("zero ideal is valid")
    }

    /// Ideal of the target generated by the image of `dZ_m`: componentwise
    /// `gcd(d·e_i, n_i)`.
    pub fn extension_ideal(&self, p: &IdealRepr) -> Result<IdealRepr, RingError> {
        self.source_ring().check_ideal(p)?;
        let d = p.0[0];
        Ok(IdealRepr(
            self.unit_image
                .0
                .iter()
                .zip(self.target.moduli())
                .map(|(&e, &n)| gcd(d * e % n, n))
                .collect(),
        ))
    }

    /// Contraction of every target prime, with `Top` for full preimages.
    pub fn to_spectral_map(&self) -> SpectralMap {
        let source_primes = prime_divisors(self.source);
        let s = Arc::new(spec(&self.source_ring()));
        let r = Arc::new(spec(&self.target));
        let contraction = spec_primes(&self.target)
            .iter()
            .map(|q| {
                let l = self.preimage_divisor(q).expect("spectrum ideals are valid");
                if l == 1 {
                    Target::Top
                } else {
                    let idx = source_primes
                        .iter()
                        .position(|&p| p == l)
                        .expect("preimage of a prime is prime or the whole ring");
                    Target::Prime(idx)
                }
            })
            .collect();
        SpectralMap::new(s, r, contraction).expect("antichain maps are monotone")
    }
}

/// If GU holds, every prime of `Z_m` containing the kernel has a prime lying
/// over it.
pub fn check_kernel_lo_lemma(h: &RingHom) -> Verdict {
    let start = Instant::now();
    let map = h.to_spectral_map();
    let mut verdict = Verdict::holding(Statement::KernelLyingOver);
    verdict.instances_checked = 1;
    if !map.check_gu() {
        verdict.note = Some("hypothesis unmet: GU".into());
    } else {
        verdict.premises_met = 1;
        let kernel = h.kernel().0[0];
        for (idx, p) in prime_divisors(h.source).into_iter().enumerate() {
            if kernel.is_multiple_of(p) && map.over(idx) == 0 {
                verdict.holds = false;
                verdict.counterexample = Some(Counterexample {
                    detail: format!("{h}: kernel {kernel}Z_{} ⊆ {p}Z_{} but nothing lies over it", h.source, h.source),
                    map,
                    hypotheses_waived: false,
                });
                break;
            }
        }
    }
    verdict.elapsed = start.elapsed();
    verdict
}

/// For unitary `h` satisfying GD: every prime `P` of `Z_m` with proper
/// extension `PR` has a prime lying over it and `f⁻¹[PR] = P`.
pub fn check_extension_lo_lemma(h: &RingHom) -> Result<Verdict, RingError> {
    if !h.is_unitary() {
        return Err(RingError::NotUnitary);
    }
    let start = Instant::now();
    let map = h.to_spectral_map();
    let mut verdict = Verdict::holding(Statement::ExtensionLyingOver);
    verdict.instances_checked = 1;
    if !map.check_gd() {
        verdict.note = Some("hypothesis unmet: GD".into());
    } else {
        verdict.premises_met = 1;
        for (idx, p) in prime_divisors(h.source).into_iter().enumerate() {
            let ext = h.extension_ideal(&IdealRepr(vec![p]))?;
            if ext.is_full() {
                continue;
            }
            let back = h.preimage_divisor(&ext)?;
            if map.over(idx) == 0 || back != p {
                verdict.holds = false;
                verdict.counterexample = Some(Counterexample {
                    detail: format!(
                        "{h}: extension of {p}Z_{} is {} with preimage {back}Z_{}",
                        h.source,
                        ideal_label(&h.target, &ext),
                        h.source
                    ),
                    map,
                    hypotheses_waived: false,
                });
                break;
            }
        }
    }
    verdict.elapsed = start.elapsed();
    Ok(verdict)
}

/// Every target `Zn(n)` and `Product(Zn(a),Zn(b))` with `2 <= n, a, b <= max_n`.
pub fn sweep_targets(max_n: u64) -> Vec<RingExpr> {
    let mut out: Vec<RingExpr> = (2..=max_n).map(RingExpr::Zn).collect();
    for a in 2..=max_n {
        for b in 2..=max_n {
            out.push(RingExpr::Product(vec![a, b]));
        }
    }
    out
}

/// Both lying-over lemmas over every homomorphism `Z_m -> T` with
/// `2 <= m <= max_m` and `T` from [`sweep_targets`]. The extension lemma is
/// only applicable to unitary homomorphisms and skips the rest.
pub fn sweep_lying_over_lemmas(max_m: u64, max_n: u64) -> (Verdict, Verdict) {
    let start = Instant::now();
    let mut kernel = Verdict::holding(Statement::KernelLyingOver);
    let mut extension = Verdict::holding(Statement::ExtensionLyingOver);
    let targets = sweep_targets(max_n);
    for m in 2..=max_m {
        for target in &targets {
            for e in valid_unit_images(m, target) {
                let h = make_hom(m, target.clone(), e).expect("unit image was filtered");
                kernel.absorb(check_kernel_lo_lemma(&h));
                if h.is_unitary() {
                    extension.absorb(check_extension_lo_lemma(&h).expect("unitary"));
                }
            }
        }
    }
    kernel.elapsed = start.elapsed();
    extension.elapsed = kernel.elapsed;
    (kernel, extension)
}
