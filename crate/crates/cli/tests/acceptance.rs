//! Exit criteria. Each test writes one `PASS`/`FAIL` line straight to the
//! process stdout, so the lines show up even when the harness captures
//! output.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use spectra::ring::{spec_primes, sweep_lying_over_lemmas};
use spectra::theorems::replays;
use spectra::{
    enumerate_chains, enumerate_posets, exhaustive_verify, exhaustive_verify_all, search_witness, spec, verify_with,
    Flag, Goal, Poset, Property, RingExpr, SpectralMap, SweepConfig, TheoremId, VerifyOptions, WitnessSearchSpec,
};
use spectra_cli::parse_instance;

const EQUIVALENCE_SINGLE_WORKER_LIMIT: Duration = Duration::from_secs(10 * 60);
const EQUIVALENCE_FOUR_WORKER_LIMIT: Duration = Duration::from_secs(3 * 60);
const RING_SWEEP_LIMIT: Duration = Duration::from_secs(5 * 60);
const RING_SWEEP_MAX_M: u64 = 30;
const RING_SWEEP_MAX_N: u64 = 30;
const PRIMALITY_MAX_N: u64 = 1000;
const CHAIN_COUNT_MAX_N: usize = 5;
/// The instance space shared by the sweep criteria.
const SWEEP_BOUNDS: (usize, usize) = (3, 4);
/// Bounds for the necessity witness of the cover theorem.
const COVER_WITNESS_BOUNDS: (usize, usize) = (3, 5);

fn report(criterion: &str, pass: bool, detail: &str) {
    let line = format!("{} {criterion}: {detail}\n", if pass { "PASS" } else { "FAIL" });
    let mut out = std::io::stdout().lock();
    out.write_all(line.as_bytes()).unwrap();
    out.flush().unwrap();
    assert!(pass, "{criterion}: {detail}");
}

fn sweep(jobs: usize) -> SweepConfig {
    SweepConfig {
        max_s: SWEEP_BOUNDS.0,
        max_r: SWEEP_BOUNDS.1,
        allow_top: true,
        jobs,
        ..SweepConfig::default()
    }
}

#[test]
fn criterion_1_equivalence_sweep() {
    let start = Instant::now();
    let one = exhaustive_verify(TheoremId::CEquivalent, &sweep(1)).unwrap();
    let t1 = start.elapsed();
    let start = Instant::now();
    let four = exhaustive_verify(TheoremId::CEquivalent, &sweep(4)).unwrap();
    let t4 = start.elapsed();
    let pass = one.holds
        && one.counterexample.is_none()
        && one.same_outcome(&four)
        && t1 < EQUIVALENCE_SINGLE_WORKER_LIMIT
        && t4 < EQUIVALENCE_FOUR_WORKER_LIMIT;
    report(
        "1 C_EQUIVALENT sweep",
        pass,
        &format!(
            "holds={} instances={} premises_met={} identical_across_workers={} 1 worker {:.2?} (< {:?}), 4 workers {:.2?} (< {:?})",
            one.holds,
            one.instances_checked,
            one.premises_met,
            one.same_outcome(&four),
            t1,
            EQUIVALENCE_SINGLE_WORKER_LIMIT,
            t4,
            EQUIVALENCE_FOUR_WORKER_LIMIT
        ),
    );
}

#[test]
fn criterion_2_maximal_chain_sweeps() {
    let ids = [TheoremId::TCoverMaxchain, TheoremId::CPerfectMaxchain];
    let v = exhaustive_verify_all(&ids, &sweep(0)).unwrap();
    let pass = v.iter().all(|v| v.holds && v.premises_met > 0);
    let detail: Vec<String> = v
        .iter()
        .map(|v| format!("{} holds={} premises_met={}/{}", v.statement, v.holds, v.premises_met, v.instances_checked))
        .collect();
    report("2 maximal chain sweeps", pass, &detail.join(", "));
}

#[test]
fn criterion_3_characterization_sweeps() {
    let ids = [
        TheoremId::PMiniGd,
        TheoremId::PMiniGu,
        TheoremId::PMiniSgb,
        TheoremId::PLayers,
        TheoremId::LLoExistence,
        TheoremId::TMaxdchainCovers,
    ];
    let v = exhaustive_verify_all(&ids, &sweep(0)).unwrap();
    // Both directions are exercised when the left side is true on some
    // instances and false on others.
    let pass = v
        .iter()
        .all(|v| v.holds && v.premises_met > 0 && v.premises_met < v.instances_checked);
    let detail: Vec<String> = v
        .iter()
        .map(|v| format!("{} holds={} lhs_true={}/{}", v.statement, v.holds, v.premises_met, v.instances_checked))
        .collect();
    report("3 characterization sweeps", pass, &detail.join(", "));
}

#[test]
fn criterion_4a_sgb_necessity_witness() {
    let required = vec![
        Flag::Holds(Property::Unitary),
        Flag::Holds(Property::Gu),
        Flag::Holds(Property::Gd),
        Flag::Holds(Property::Lo),
        Flag::Fails(Property::Sgb),
    ];
    let spec = WitnessSearchSpec::new(
        required,
        Goal::NotCover { d_size: Some(3) },
        COVER_WITNESS_BOUNDS.0,
        COVER_WITNESS_BOUNDS.1,
    );
    let outcome = search_witness(&spec).unwrap();
    let detail = match &outcome.witness {
        Some(w) => format!("witness {w:?}, replays={}", spec.accepts(w)),
        None => format!(
            "no instance within |s| <= {}, |r| <= {}",
            COVER_WITNESS_BOUNDS.0, COVER_WITNESS_BOUNDS.1
        ),
    };
    let pass = outcome.witness.as_ref().is_some_and(|w| spec.accepts(w));
    report("4a GU GD LO without SGB, uncovered 3-chain", pass, &detail);
}

#[test]
fn criterion_4b_going_up_without_lying_over() {
    let required = vec![
        Flag::Holds(Property::Gu),
        Flag::Fails(Property::Lo),
        Flag::Holds(Property::Unitary),
    ];
    let spec = WitnessSearchSpec::new(required, Goal::PropertyFails(Property::Lo), 3, 4);
    let outcome = search_witness(&spec).unwrap();
    let w = outcome.witness.expect("a witness");
    let shape = w.s().len() == 2 && w.s().strict_pairs().is_empty() && w.r().len() == 1;
    let ring = parse_instance("hom(m=6, target=Zn(2), e=1)").unwrap().map;
    let same_shape = ring.s().len() == w.s().len() && ring.r().len() == w.r().len() && ring.summary() == w.summary();
    let pass = shape && same_shape && spec.accepts(&w);
    report(
        "4b GU without LO",
        pass,
        &format!(
            "witness {w:?}, 2-antichain over 1 point={shape}, same properties as Z_6 -> Z_2={same_shape}, replays={}",
            spec.accepts(&w)
        ),
    );
}

fn image_is_only_top(m: &SpectralMap) -> bool {
    m.r().maximal_chains().iter().any(|&c| {
        let img = m.image_chain(c);
        img.top && img.primes.is_empty()
    })
}

#[test]
fn criterion_5_ring_regressions() {
    let six = parse_instance("hom(m=6, target=Zn(2), e=1)").unwrap().map;
    let s = six.summary();
    let six_ok = s.gu && s.inc && s.gd && s.sgb && !s.lo && !six.check_layer(1);

    let corner = parse_instance("hom(m=2, target=Product(Zn(2),Zn(2)), e=(1,0))").unwrap().map;
    let waived = verify_with(&corner, TheoremId::TCoverMaxchain, VerifyOptions { waive_hypotheses: true });
    let detail = waived.counterexample.as_ref().map(|c| c.detail.clone()).unwrap_or_default();
    let corner_ok = !corner.is_unitary()
        && !waived.holds
        && image_is_only_top(&corner)
        && detail.contains("TOP")
        && replays(TheoremId::TCoverMaxchain, waived.counterexample.as_ref().unwrap());
    report(
        "5 ring regressions",
        six_ok && corner_ok,
        &format!(
            "Z_6 -> Z_2: GU={} INC={} GD={} SGB={} LO={} layer1={}; Z_2 -> Z_2 x Z_2 e=(1,0): unitary={} waived verdict holds={} ({detail})",
            s.gu,
            s.inc,
            s.gd,
            s.sgb,
            s.lo,
            six.check_layer(1),
            corner.is_unitary(),
            waived.holds
        ),
    );
}

#[test]
fn criterion_6_ideal_lemma_sweep() {
    let start = Instant::now();
    let (kernel, extension) = sweep_lying_over_lemmas(RING_SWEEP_MAX_M, RING_SWEEP_MAX_N);
    let elapsed = start.elapsed();
    let pass = kernel.holds && extension.holds && elapsed < RING_SWEEP_LIMIT;
    report(
        "6 ideal lemma sweep",
        pass,
        &format!(
            "{} holds={} over {} homs (premises {}), {} holds={} over {} unitary homs (premises {}), {elapsed:.2?} (< {RING_SWEEP_LIMIT:?})",
            kernel.statement,
            kernel.holds,
            kernel.instances_checked,
            kernel.premises_met,
            extension.statement,
            extension.holds,
            extension.instances_checked,
            extension.premises_met
        ),
    );
}

/// `dZ_n` is prime when `Z_d` has no zero divisors and `d > 1`.
fn quotient_is_domain(d: u64) -> bool {
    d > 1 && (1..d).all(|a| (1..d).all(|b| a * b % d != 0))
}

fn brute_chain_count(p: &Poset) -> usize {
    (0u64..1 << p.len())
        .filter(|&m| {
            let members: Vec<usize> = (0..p.len()).filter(|i| m >> i & 1 == 1).collect();
            members.iter().all(|&a| members.iter().all(|&b| p.leq(a, b) || p.leq(b, a)))
        })
        .count()
}

#[test]
fn criterion_7_oracle_equivalence() {
    let mut ring_mismatch = Vec::new();
    for n in 2..=PRIMALITY_MAX_N {
        let ring = RingExpr::Zn(n);
        let want: Vec<u64> = (1..=n).filter(|d| n % d == 0 && quotient_is_domain(*d)).collect();
        let got: Vec<u64> = spec_primes(&ring).into_iter().map(|i| i.0[0]).collect();
        let poset = spec(&ring);
        let labels: Vec<String> = want.iter().map(|d| format!("{d}Z_{n}")).collect();
        if got != want || poset.labels() != labels.as_slice() || !poset.strict_pairs().is_empty() {
            ring_mismatch.push(n);
        }
    }
    let mut posets = 0;
    let mut chain_mismatch = 0;
    for n in 0..=CHAIN_COUNT_MAX_N {
        for p in enumerate_posets(n).unwrap() {
            posets += 1;
            if enumerate_chains(&p, true).len() != brute_chain_count(&p) {
                chain_mismatch += 1;
            }
        }
    }
    report(
        "7 oracle equivalence",
        ring_mismatch.is_empty() && chain_mismatch == 0,
        &format!(
            "spectra of Z_2..Z_{PRIMALITY_MAX_N} mismatched at {ring_mismatch:?}; chain counts mismatched on {chain_mismatch} of {posets} posets with <= {CHAIN_COUNT_MAX_N} elements"
        ),
    );
}

fn cli(args: &[&str], jobs: &str) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_spectra"))
        .args(args)
        .args(["--jobs", jobs])
        .output()
        .unwrap();
    (out.stdout, out.status.code().unwrap())
}

#[test]
fn criterion_8_reports_are_byte_stable() {
    let runs: [&[&str]; 4] = [
        &["verify", "--exhaustive", "--seed", "7"],
        &["verify", "--exhaustive", "--max-s", "2", "--max-r", "3", "--debug-waive-hypotheses"],
        &["search", "--require", "GU,!LO,UNITARY", "--goal", "fails:LO", "--seed", "7"],
        &["search", "--require", "GB", "--goal", "fails:SGB", "--max-s", "4", "--max-r", "4"],
    ];
    let mut stable = Vec::new();
    for args in runs {
        let a = cli(args, "1");
        let b = cli(args, "4");
        let c = cli(args, "4");
        stable.push((args.join(" "), a == b && b == c && !a.0.is_empty()));
    }
    let pass = stable.iter().all(|(_, ok)| *ok);
    let detail: Vec<String> = stable.iter().map(|(a, ok)| format!("`{a}` identical={ok}")).collect();
    report("8 determinism across worker counts", pass, &detail.join(", "));
}
