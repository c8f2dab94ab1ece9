//! One verifier per statement about contraction maps.
//!
//! Each verifier is an implication checker: when a hypothesis fails on the
//! instance the statement is silent and the verdict holds with a note.
//! Biconditionals are checked in both directions at once, so they have no
//! hypotheses. [`VerifyOptions::waive_hypotheses`] evaluates conclusions
//! regardless, which is how the non-unitary failure examples are exhibited.

use std::cell::OnceCell;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::poset::{cuts_of, Chain};
use crate::properties::{Property, PropertySummary};
use crate::spectral::{SpectralMap, Target};
use crate::verdict::{Counterexample, Statement, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    /// Unitary with GU, GD, SGB: maximal chains contract onto maximal chains.
    TCoverMaxchain,
    /// Adding INC: each maximal chain is a perfect cover of its image.
    CPerfectMaxchain,
    /// LO iff every nonempty chain has a nonempty maximal D-chain.
    LLoExistence,
    /// Layers 1, 1-2, 1-3 against LO+INC, +GU+GD, +SGB.
    PLayers,
    /// GD iff every nonempty maximal D-chain reaches below each `p ∈ D`.
    PMiniGd,
    /// GU iff every nonempty maximal D-chain reaches above each `p ∈ D`.
    PMiniGu,
    /// SGB iff every proper cut of a nonempty maximal D-chain leaves no gap.
    PMiniSgb,
    /// GD with SGB gives GGD, and maximal D-chains through a lift of the
    /// greatest element of `D` are covers.
    CGgd,
    /// The dual: GU with SGB gives GGU, anchored at the least element.
    CGguDual,
    /// GD, GU, SGB iff every nonempty maximal D-chain covers `D`.
    TMaxdchainCovers,
    /// LO, INC, GD, GU, SGB: every maximal D-chain is a perfect maximal cover.
    TPerfectCover,
    /// Layers 1-3, the five properties, perfect covers and `|C| = |D|` agree.
    CEquivalent,
    /// Unitary: a maximal cover of a maximal chain is a maximal chain.
    LMaxcoverMaxchain,
    /// Unitary with GD, GU, SGB: nonempty maximal D-chains over maximal
    /// chains are maximal covers and maximal chains.
    CMaxdchainMaxchain,
    /// Unitary with LO, GD, GU, SGB: each maximal chain has a maximal cover
    /// that is a maximal chain.
    CExistsMaxchainCover,
    /// Exploratory: on unitary maps, SCLO iff GU.
    XKoScloEqGu,
}

impl TheoremId {
    pub const ALL: [TheoremId; 16] = [
        TheoremId::TCoverMaxchain,
        TheoremId::CPerfectMaxchain,
        TheoremId::LLoExistence,
        TheoremId::PLayers,
        TheoremId::PMiniGd,
        TheoremId::PMiniGu,
        TheoremId::PMiniSgb,
        TheoremId::CGgd,
        TheoremId::CGguDual,
        TheoremId::TMaxdchainCovers,
        TheoremId::TPerfectCover,
        TheoremId::CEquivalent,
        TheoremId::LMaxcoverMaxchain,
        TheoremId::CMaxdchainMaxchain,
        TheoremId::CExistsMaxchainCover,
        TheoremId::XKoScloEqGu,
    ];

    /// Everything except the exploratory check.
    pub const GATED: [TheoremId; 15] = [
        TheoremId::TCoverMaxchain,
        TheoremId::CPerfectMaxchain,
        TheoremId::LLoExistence,
        TheoremId::PLayers,
        TheoremId::PMiniGd,
        TheoremId::PMiniGu,
        TheoremId::PMiniSgb,
        TheoremId::CGgd,
        TheoremId::CGguDual,
        TheoremId::TMaxdchainCovers,
        TheoremId::TPerfectCover,
        TheoremId::CEquivalent,
        TheoremId::LMaxcoverMaxchain,
        TheoremId::CMaxdchainMaxchain,
        TheoremId::CExistsMaxchainCover,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::TCoverMaxchain => "T_COVER_MAXCHAIN",
            TheoremId::CPerfectMaxchain => "C_PERFECT_MAXCHAIN",
            TheoremId::LLoExistence => "L_LO_EXISTENCE",
            TheoremId::PLayers => "P_LAYERS",
            TheoremId::PMiniGd => "P_MINI_GD",
            TheoremId::PMiniGu => "P_MINI_GU",
            TheoremId::PMiniSgb => "P_MINI_SGB",
            TheoremId::CGgd => "C_GGD",
            TheoremId::CGguDual => "C_GGU_DUAL",
            TheoremId::TMaxdchainCovers => "T_MAXDCHAIN_COVERS",
            TheoremId::TPerfectCover => "T_PERFECT_COVER",
            TheoremId::CEquivalent => "C_EQUIVALENT",
            TheoremId::LMaxcoverMaxchain => "L_MAXCOVER_MAXCHAIN",
            TheoremId::CMaxdchainMaxchain => "C_MAXDCHAIN_MAXCHAIN",
            TheoremId::CExistsMaxchainCover => "C_EXISTS_MAXCHAIN_COVER",
            TheoremId::XKoScloEqGu => "X_KO_SCLO_EQ_GU",
        }
    }

    pub fn is_exploratory(self) -> bool {
        self == TheoremId::XKoScloEqGu
    }

    /// Properties assumed by the statement; empty for biconditionals.
    pub fn hypotheses(self) -> &'static [Property] {
        use Property::*;
        match self {
            TheoremId::TCoverMaxchain => &[Unitary, Gu, Gd, Sgb],
            TheoremId::CPerfectMaxchain => &[Unitary, Inc, Gu, Gd, Sgb],
            TheoremId::CGgd => &[Gd, Sgb],
            TheoremId::CGguDual => &[Gu, Sgb],
            TheoremId::TPerfectCover => &[Lo, Inc, Gd, Gu, Sgb],
            TheoremId::LMaxcoverMaxchain => &[Unitary],
            TheoremId::CMaxdchainMaxchain => &[Unitary, Gd, Gu, Sgb],
            TheoremId::CExistsMaxchainCover => &[Unitary, Lo, Gd, Gu, Sgb],
            TheoremId::XKoScloEqGu => &[Unitary],
            TheoremId::LLoExistence
            | TheoremId::PLayers
            | TheoremId::PMiniGd
            | TheoremId::PMiniGu
            | TheoremId::PMiniSgb
            | TheoremId::TMaxdchainCovers
            | TheoremId::CEquivalent => &[],
        }
    }

    /// What `premises_met` counts: the hypotheses, or for a biconditional
    /// the properties on its left-hand side.
    pub fn premise_properties(self) -> &'static [Property] {
        use Property::*;
        match self {
            TheoremId::LLoExistence => &[Lo],
            TheoremId::PMiniGd => &[Gd],
            TheoremId::PMiniGu => &[Gu],
            TheoremId::PMiniSgb => &[Sgb],
            TheoremId::TMaxdchainCovers => &[Gd, Gu, Sgb],
            TheoremId::PLayers | TheoremId::CEquivalent => &[Lo, Inc, Gu, Gd, Sgb],
            other => other.hypotheses(),
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let upper = s.trim().to_ascii_uppercase();
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == upper)
            .ok_or_else(|| format!("unknown theorem id `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Check conclusions even when hypotheses fail.
    pub waive_hypotheses: bool,
}

/// Lazily computed facts about one map, shared across verifiers.
pub struct Facts<'a> {
    map: &'a SpectralMap,
    summary: OnceCell<PropertySummary>,
    layers: OnceCell<[bool; 3]>,
    /// Maximal D-chains, indexed like `map.s().chains()`.
    dchains: OnceCell<Vec<Vec<Chain>>>,
}

impl<'a> Facts<'a> {
    pub fn new(map: &'a SpectralMap) -> Self {
        Facts {
            map,
            summary: OnceCell::new(),
            layers: OnceCell::new(),
            dchains: OnceCell::new(),
        }
    }

    pub fn map(&self) -> &'a SpectralMap {
        self.map
    }

    pub fn summary(&self) -> &PropertySummary {
        self.summary.get_or_init(|| self.map.summary())
    }

    pub fn has(&self, p: Property) -> bool {
        self.summary().get(p)
    }

    fn all(&self, ps: &[Property]) -> bool {
        ps.iter().all(|&p| self.has(p))
    }

    pub fn layers(&self) -> [bool; 3] {
        *self.layers.get_or_init(|| {
            let m = self.map;
            [m.check_layer(1), m.check_layer(2), m.check_layer(3)]
        })
    }

    /// `(D, maximal D-chains of D)` for every chain `D` of `s`, empty first.
    pub fn d_chains(&self) -> impl Iterator<Item = (Chain, &[Chain])> {
        let per_chain = self.dchains.get_or_init(|| {
            self.map
                .s()
                .chains()
                .iter()
                .map(|&d| self.map.maximal_d_chains(d))
                .collect()
        });
        self.map
            .s()
            .chains()
            .iter()
            .copied()
            .zip(per_chain.iter().map(Vec::as_slice))
    }

    /// Nonempty chains `D` paired with their nonempty maximal D-chains.
    fn nonempty_pairs(&self) -> impl Iterator<Item = (Chain, Chain)> + '_ {
        self.d_chains()
            .filter(|(d, _)| !d.is_empty())
            .flat_map(|(d, cs)| cs.iter().filter(|c| !c.is_empty()).map(move |&c| (d, c)))
    }
}

struct Outcome {
    premises: bool,
    waived: bool,
    violation: Option<String>,
    note: Option<String>,
}

/// `Err` carries a description of the failure.
type Check = Result<(), String>;

fn ensure(ok: bool, detail: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(detail())
    }
}

fn prime_of(m: &SpectralMap, q: usize) -> usize {
    match m.target(q) {
        Target::Prime(p) => p,
        Target::Top => unreachable!("D-chain members never contract to TOP"),
    }
}

fn chain_str(m: &SpectralMap, c: Chain) -> String {
    c.display(m.r())
}

fn d_str(m: &SpectralMap, d: Chain) -> String {
    d.display(m.s())
}

// Individual conditions. Each returns the first failing witness.

fn lo_existence(f: &Facts) -> Check {
    let m = f.map();
    for (d, cs) in f.d_chains().filter(|(d, _)| !d.is_empty()) {
        ensure(cs.iter().any(|c| !c.is_empty()), || {
            format!("D = {} has only the empty maximal D-chain", d_str(m, d))
        })?;
    }
    Ok(())
}

fn mini_gd(f: &Facts) -> Check {
    let m = f.map();
    for (d, c) in f.nonempty_pairs() {
        for p in d.members() {
            ensure(c.members().any(|q| m.s().leq(prime_of(m, q), p)), || {
                format!(
                    "maximal D-chain {} over D = {} has nothing contracting below {}",
                    chain_str(m, c),
                    d_str(m, d),
                    m.s().label(p)
                )
            })?;
        }
    }
    Ok(())
}

fn mini_gu(f: &Facts) -> Check {
    let m = f.map();
    for (d, c) in f.nonempty_pairs() {
        for p in d.members() {
            ensure(c.members().any(|q| m.s().leq(p, prime_of(m, q))), || {
                format!(
                    "maximal D-chain {} over D = {} has nothing contracting above {}",
                    chain_str(m, c),
                    d_str(m, d),
                    m.s().label(p)
                )
            })?;
        }
    }
    Ok(())
}

fn mini_sgb(f: &Facts) -> Check {
    let m = f.map();
    let s = m.s();
    for (d, c) in f.nonempty_pairs() {
        for cut in cuts_of(c, true) {
            for p in d.members() {
                let left = cut.left().members().any(|q| s.leq(p, prime_of(m, q)));
                let right = cut.right().members().any(|q| s.leq(prime_of(m, q), p));
                ensure(left || right, || {
                    format!(
                        "cut ({}, {}) of maximal D-chain over D = {} leaves {} strictly between",
                        chain_str(m, cut.left()),
                        chain_str(m, cut.right()),
                        d_str(m, d),
                        s.label(p)
                    )
                })?;
            }
        }
    }
    Ok(())
}

fn nonempty_maximal_d_chains_cover(f: &Facts) -> Check {
    let m = f.map();
    for (d, c) in f.nonempty_pairs() {
        ensure(m.covers(c, d), || {
            format!("maximal D-chain {} does not cover D = {}", chain_str(m, c), d_str(m, d))
        })?;
    }
    Ok(())
}

fn all_perfect_maximal_covers(f: &Facts) -> Check {
    let m = f.map();
    for (d, cs) in f.d_chains() {
        for &c in cs {
            ensure(m.covers(c, d) && c.len() == d.len(), || {
                format!(
                    "maximal D-chain {} is not a perfect cover of D = {}",
                    chain_str(m, c),
                    d_str(m, d)
                )
            })?;
        }
    }
    Ok(())
}

fn all_sizes_match(f: &Facts) -> Check {
    let m = f.map();
    for (d, cs) in f.d_chains() {
        for &c in cs {
            ensure(c.len() == d.len(), || {
                format!(
                    "maximal D-chain {} has {} members but D = {} has {}",
                    chain_str(m, c),
                    c.len(),
                    d_str(m, d),
                    d.len()
                )
            })?;
        }
    }
    Ok(())
}

/// Every maximal chain of `r` contracts onto a maximal chain of `s`,
/// optionally bijectively.
fn maximal_chains_contract_to_maximal(f: &Facts, perfect: bool) -> Check {
    let m = f.map();
    let s = m.s();
    for &c in m.r().maximal_chains() {
        let image = m.image_chain(c);
        ensure(!image.top, || {
            format!("maximal chain {} has TOP in its image", chain_str(m, c))
        })?;
        ensure(s.extensions(image.primes, s.universe()) == 0, || {
            format!(
                "maximal chain {} contracts to {}, which is not maximal",
                chain_str(m, c),
                d_str(m, image.primes)
            )
        })?;
        if perfect {
            ensure(c.len() == image.primes.len(), || {
                format!(
                    "maximal chain {} is not a perfect cover of {}",
                    chain_str(m, c),
                    d_str(m, image.primes)
                )
            })?;
        }
    }
    Ok(())
}

/// Maximal D-chains through a lift of the anchor of `D` are covers. The
/// anchor is the greatest element for GGD and the least for its dual.
fn anchored_covers(f: &Facts, greatest: bool) -> Check {
    let m = f.map();
    for (d, cs) in f.d_chains().filter(|(d, _)| !d.is_empty()) {
        let anchor = if greatest { d.greatest() } else { d.least() }.expect("nonempty");
        for &c in cs.iter().filter(|c| c.mask() & m.over(anchor) != 0) {
            ensure(m.covers(c, d), || {
                format!(
                    "maximal D-chain {} through a lift of {} does not cover D = {}",
                    chain_str(m, c),
                    m.s().label(anchor),
                    d_str(m, d)
                )
            })?;
        }
    }
    Ok(())
}

fn is_maximal_in_r(m: &SpectralMap, c: Chain) -> bool {
    m.r().extensions(c, m.r().universe()) == 0
}

fn maximal_covers_are_maximal(f: &Facts) -> Check {
    let m = f.map();
    for &d in m.s().maximal_chains() {
        for &c in m.maximal_d_chains(d).iter().filter(|&&c| m.covers(c, d)) {
            ensure(is_maximal_in_r(m, c), || {
                format!(
                    "maximal cover {} of maximal chain {} is not a maximal chain",
                    chain_str(m, c),
                    d_str(m, d)
                )
            })?;
        }
    }
    Ok(())
}

fn maximal_d_chains_are_maximal(f: &Facts) -> Check {
    let m = f.map();
    for &d in m.s().maximal_chains() {
        for &c in m.maximal_d_chains(d).iter().filter(|c| !c.is_empty()) {
            ensure(m.covers(c, d) && is_maximal_in_r(m, c), || {
                format!(
                    "maximal D-chain {} over maximal chain {} is not both a cover and a maximal chain",
                    chain_str(m, c),
                    d_str(m, d)
                )
            })?;
        }
    }
    Ok(())
}

fn exists_maximal_cover_that_is_maximal(f: &Facts) -> Check {
    let m = f.map();
    for &d in m.s().maximal_chains() {
        let found = m
            .maximal_d_chains(d)
            .into_iter()
            .any(|c| m.covers(c, d) && is_maximal_in_r(m, c));
        ensure(found, || {
            format!("maximal chain {} has no maximal cover that is a maximal chain", d_str(m, d))
        })?;
    }
    Ok(())
}

fn prop_str(ps: &[Property], values: impl Fn(Property) -> bool) -> String {
    ps.iter()
        .map(|&p| if values(p) { p.to_string() } else { format!("¬{p}") })
        .collect::<Vec<_>>()
        .join(" ")
}

/// `lhs` must agree with `rhs`.
fn iff(lhs: bool, lhs_name: &str, rhs: Check) -> Check {
    match (lhs, rhs) {
        (true, Ok(())) | (false, Err(_)) => Ok(()),
        (true, Err(why)) => Err(format!("{lhs_name} holds but {why}")),
        (false, Ok(())) => Err(format!("{lhs_name} fails but the characterization holds")),
    }
}

fn evaluate(f: &Facts, t: TheoremId, opts: VerifyOptions) -> Outcome {
    use Property::*;
    let conclusion: fn(&Facts) -> Check = match t {
        TheoremId::TCoverMaxchain => |f| maximal_chains_contract_to_maximal(f, false),
        TheoremId::CPerfectMaxchain => |f| maximal_chains_contract_to_maximal(f, true),
        TheoremId::CGgd => |f| {
            ensure(f.has(Ggd), || "GGD fails".into())?;
            anchored_covers(f, true)
        },
        TheoremId::CGguDual => |f| {
            ensure(f.has(Sclo), || "GGU fails".into())?;
            anchored_covers(f, false)
        },
        TheoremId::TPerfectCover => all_perfect_maximal_covers,
        TheoremId::LMaxcoverMaxchain => maximal_covers_are_maximal,
        TheoremId::CMaxdchainMaxchain => maximal_d_chains_are_maximal,
        TheoremId::CExistsMaxchainCover => exists_maximal_cover_that_is_maximal,
        TheoremId::XKoScloEqGu => |f| {
            ensure(f.has(Sclo) == f.has(Gu), || {
                format!("SCLO is {} but GU is {}", f.has(Sclo), f.has(Gu))
            })
        },
        TheoremId::LLoExistence => |f| iff(f.has(Lo), "LO", lo_existence(f)),
        TheoremId::PMiniGd => |f| iff(f.has(Gd), "GD", mini_gd(f)),
        TheoremId::PMiniGu => |f| iff(f.has(Gu), "GU", mini_gu(f)),
        TheoremId::PMiniSgb => |f| iff(f.has(Sgb), "SGB", mini_sgb(f)),
        TheoremId::TMaxdchainCovers => |f| {
            iff(f.all(&[Gd, Gu, Sgb]), "GD GU SGB", nonempty_maximal_d_chains_cover(f))
        },
        TheoremId::PLayers => |f| {
            let [l1, l2, l3] = f.layers();
            let rows: [(bool, &[Property]); 3] = [
                (l1, &[Lo, Inc]),
                (l1 && l2, &[Lo, Inc, Gu, Gd]),
                (l1 && l2 && l3, &[Lo, Inc, Gu, Gd, Sgb]),
            ];
            for (n, (layers, props)) in rows.into_iter().enumerate() {
                ensure(layers == f.all(props), || {
                    format!(
                        "layers 1..={} is {layers} but {} is {}",
                        n + 1,
                        props.iter().map(|p| p.as_str()).collect::<Vec<_>>().join(" "),
                        !layers
                    )
                })?;
            }
            Ok(())
        },
        TheoremId::CEquivalent => |f| {
            let [l1, l2, l3] = f.layers();
            let conditions = [
                l1 && l2 && l3,
                f.all(&[Lo, Inc, Gd, Gu, Sgb]),
                all_perfect_maximal_covers(f).is_ok(),
                all_sizes_match(f).is_ok(),
            ];
            ensure(conditions.iter().all(|&c| c == conditions[0]), || {
                format!(
                    "conditions disagree: layers={} properties={} perfect_covers={} sizes={}",
                    conditions[0], conditions[1], conditions[2], conditions[3]
                )
            })
        },
    };

    let hyps = t.hypotheses();
    let premises = f.all(t.premise_properties());
    let hyps_ok = f.all(hyps);
    if !hyps_ok && !opts.waive_hypotheses {
        let unmet: Vec<Property> = hyps.iter().copied().filter(|&p| !f.has(p)).collect();
        return Outcome {
            premises,
            waived: false,
            violation: None,
            note: Some(format!("hypothesis unmet: {}", prop_str(&unmet, |_| true))),
        };
    }
    let violation = conclusion(f).err();
    let note = (!hyps_ok).then(|| format!("hypotheses waived: {}", prop_str(hyps, |p| f.has(p))));
    Outcome {
        premises,
        waived: !hyps_ok,
        violation,
        note,
    }
}

/// Verifies several statements on one map, sharing property evaluation.
pub fn verify_many(m: &SpectralMap, ids: &[TheoremId], opts: VerifyOptions) -> Vec<Verdict> {
    let facts = Facts::new(m);
    ids.iter()
        .map(|&t| {
            let start = Instant::now();
            let out = evaluate(&facts, t, opts);
            let mut v = Verdict::holding(Statement::Theorem(t));
            v.instances_checked = 1;
            v.premises_met = u64::from(out.premises);
            v.note = out.note;
            if let Some(detail) = out.violation {
                v.holds = false;
                v.counterexample = Some(Counterexample {
                    map: m.clone(),
                    detail,
                    hypotheses_waived: out.waived,
                });
            }
            v.elapsed = start.elapsed();
            v
        })
        .collect()
}

pub fn verify_with(m: &SpectralMap, t: TheoremId, opts: VerifyOptions) -> Verdict {
    verify_many(m, &[t], opts).pop().expect("one id")
}

pub fn verify(m: &SpectralMap, t: TheoremId) -> Verdict {
    verify_with(m, t, VerifyOptions::default())
}

/// Re-verifies a stored counterexample in isolation.
pub fn replays(t: TheoremId, cx: &Counterexample) -> bool {
    let opts = VerifyOptions {
        waive_hypotheses: cx.hypotheses_waived,
    };
    !verify_with(&cx.map, t, opts).holds
}
