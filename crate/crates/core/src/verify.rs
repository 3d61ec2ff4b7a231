//! A bounded run of every invariant the library promises, used by the
//! `verify-all` command.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::branching::{
    check_stochastic_row, check_stochastic_row_laurent, pairing, phi_pushdown, pushdown_chain, theta, theta_eval,
    BetaSign, BranchingGraph, CentralFunction, GtGraph, L1Vector, YoungGraph,
};
use crate::charfun::{adjoint_check, coherence_check, multiplicativity_check, TorusPoint};
use crate::error::Result;
use crate::harmonic::{character_product, check_harmonic, from_top, CoherentSystem};
use crate::repsystem::{sigma_eval_product, zhat_mul, RingConfig, SigmaElement, ZhatElement};
use crate::sampler::{down_histogram, empirical_tv};
use crate::scalar::{rational, to_f64, LaurentPoly, Rational};
use crate::signature::{bracket, partitions_of, signatures_in_box, Signature};
use crate::symfunc::{dim_classical, lr_splice, schur_eval, syt_count, tensor_terms};

/// Bounds of a verification run.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub max_level: usize,
    pub part_bound: i64,
    pub q: Rational,
    pub seed: u64,
    pub tol: f64,
    pub samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            max_level: 3,
            part_bound: 3,
            q: rational(9, 10),
            seed: 42,
            tol: 1e-10,
            samples: 20_000,
        }
    }
}

/// Result of one named check.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub detail: String,
}

struct Tally {
    name: &'static str,
    cases: usize,
    failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            cases: 0,
            failure: None,
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(what());
        }
    }

    fn finish(self) -> CheckOutcome {
        let passed = self.failure.is_none();
        let detail = self.failure.unwrap_or_else(|| format!("{} cases", self.cases));
        CheckOutcome {
            name: self.name,
            passed,
            cases: self.cases,
            detail,
        }
    }
}

fn window(level: usize, bound: i64) -> Vec<Signature> {
    signatures_in_box(level, -bound, bound)
}

fn stochastic(cfg: &VerifyConfig) -> Result<CheckOutcome> {
    let mut t = Tally::new("stochastic-rows");
    let gq = GtGraph::quantum(BetaSign::Minus);
    let gp = GtGraph::quantum(BetaSign::Plus);
    let gc = GtGraph::classical();
    for n in 1..=cfg.max_level {
        for lam in window(n, cfg.part_bound) {
            for g in [&gq, &gp, &gc] {
                let d = check_stochastic_row_laurent(g, &lam)?;
                t.record(d.is_zero(), || format!("{} row {lam}: defect {d}", g.kind()));
            }
        }
        for p in partitions_of(n) {
            let v = check_stochastic_row(&YoungGraph, &p)?;
            t.record(v.pass(), || format!("young row {p}: sum {}", v.row_sum));
        }
    }
    Ok(t.finish())
}

fn degeneration(cfg: &VerifyConfig) -> Result<CheckOutcome> {
    let mut t = Tally::new("q-one-degeneration");
    let quantum = GtGraph::quantum(BetaSign::Minus).at(Rational::one());
    let classical = GtGraph::classical().at(Rational::one());
    for n in 1..=cfg.max_level {
        for lam in window(n, cfg.part_bound) {
            for mu in classical.covers_below(&lam) {
                let (a, b) = (quantum.link(&lam, &mu)?, classical.link(&lam, &mu)?);
                t.record(a == b, || format!("{lam} -> {mu}: {a} vs {b}"));
                let ratio =
                    b * Rational::from_integer(dim_classical(&lam)) / Rational::from_integer(dim_classical(&mu));
                t.record(ratio.is_one(), || format!("{lam} -> {mu}: integrality ratio {ratio}"));
            }
        }
    }
    Ok(t.finish())
}

fn q_commutation(cfg: &VerifyConfig) -> Result<CheckOutcome> {
    let mut t = Tally::new("q-commutation");
    let ring = RingConfig::quantum();
    let top = cfg.max_level.min(2);
    let basis: Vec<Signature> = (1..=top).flat_map(|n| window(n, cfg.part_bound.min(2))).collect();
    for mu in &basis {
        for nu in &basis {
            let (zm, zn) = (ZhatElement::basis(mu.clone()), ZhatElement::basis(nu.clone()));
            let a = zhat_mul(&zm, &zn, &ring)?;
            let b = zhat_mul(&zn, &zm, &ring)?.scale(&LaurentPoly::q_pow(2 * bracket(mu, nu)));
            t.record(a == b, || format!("zhat{mu} * zhat{nu}"));
        }
    }
    Ok(t.finish())
}

fn ring_laws(cfg: &VerifyConfig) -> Result<CheckOutcome> {
    let mut t = Tally::new("ring-laws");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let pick = |rng: &mut ChaCha8Rng| {
        let n = rng.random_range(1..=2usize);
        let w = window(n, 1);
        w[rng.random_range(0..w.len())].clone()
    };
    for _ in 0..20 {
        let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let floor = [&a, &b, &c].iter().filter_map(|s| s.min_part()).fold(0, i64::min);
        let ring = RingConfig::quantum().with_floor(floor);
        let (za, zb, zc) = (
            ZhatElement::basis(a.clone()),
            ZhatElement::basis(b.clone()),
            ZhatElement::basis(c.clone()),
        );
        let left = zhat_mul(&zhat_mul(&za, &zb, &ring)?, &zc, &ring)?;
        let right = zhat_mul(&za, &zhat_mul(&zb, &zc, &ring)?, &ring)?;
        t.record(left == right, || format!("associativity at {a}, {b}, {c}"));
        let unit = zhat_mul(&ZhatElement::one(), &za, &ring)? == za && zhat_mul(&za, &ZhatElement::one(), &ring)? == za;
        t.record(unit, || format!("unit law at {a}"));
    }
    let classical = RingConfig::classical();
    for mu in window(1, cfg.part_bound.min(2)).into_iter().chain(window(2, 1)) {
        for nu in window(1, cfg.part_bound.min(2)) {
            let (zm, zn) = (ZhatElement::basis(mu.clone()), ZhatElement::basis(nu.clone()));
            let ab = zhat_mul(&zm, &zn, &classical)?;
            t.record(ab == zhat_mul(&zn, &zm, &classical)?, || {
                format!("classical commutativity {mu}, {nu}")
            });
            for (lam, c) in ab.at_q_one()? {
                let lr = lr_splice(&lam, &mu, &nu)?;
                t.record(c == Rational::from_integer(lr.into()), || {
                    format!("c({lam}|{mu},{nu}) = {c} vs {lr}")
                });
            }
        }
    }
    Ok(t.finish())
}

fn module_relation(cfg: &VerifyConfig) -> Result<CheckOutcome> {
    let mut t = Tally::new("module-relation");
    let g = GtGraph::quantum(BetaSign::Minus).at(cfg.q.clone());
    let one = SigmaElement::unit_at(1);
    for n in 1..cfg.max_level {
        for mu in window(n, 1) {
            let f = CentralFunction::indicator(n, mu.clone());
            let sf = SigmaElement::single(f.clone());
            for lam in window(n + 1, cfg.part_bound.min(2)) {
                let a = sigma_eval_product(&g, &sf, &one, &lam)?;
                let b = theta_eval(&g, &f, &lam)?;
                t.record(a == b, || format!("f = 1_{mu}, at {lam}: {a} vs {b}"));
            }
        }
    }
    Ok(t.finish())
}

fn duality(cfg: &VerifyConfig) -> Result<CheckOutcome> {
    let mut t = Tally::new("theta-phi-duality");
    let g = GtGraph::quantum(BetaSign::Minus).at(cfg.q.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed);
    for n in 1..=cfg.max_level.max(1) {
        let upper = window(n, cfg.part_bound);
        let lower = window(n - 1, cfg.part_bound);
        for _ in 0..10 {
            let omega = L1Vector::from_entries(
                n,
                (0..3).map(|_| {
                    (
                        upper[rng.random_range(0..upper.len())].clone(),
                        rational(rng.random_range(-5..=5), 7),
                    )
                }),
            );
            let values: BTreeMap<_, _> = (0..3)
                .map(|_| {
                    (
                        lower[rng.random_range(0..lower.len())].clone(),
                        rational(rng.random_range(-5..=5), 3),
                    )
                })
                .collect();
            let f = CentralFunction::from_map(n - 1, values);
            let lhs = pairing(&phi_pushdown(&g, &omega)?, &f)?;
            let rhs = pairing(&omega, &theta(&g, &f))?;
            t.record(lhs == rhs, || format!("duality at level {n}: {lhs} vs {rhs}"));
        }
    }
    Ok(t.finish())
}

fn harmonic(cfg: &VerifyConfig) -> Result<CheckOutcome> {
    let mut t = Tally::new("harmonic-systems");
    let g = GtGraph::quantum(BetaSign::Minus).at(cfg.q.clone());
    for lam in window(cfg.max_level, cfg.part_bound.min(2)) {
        let sys = from_top(&g, &L1Vector::delta(cfg.max_level, lam.clone()))?;
        t.record(check_harmonic(&sys)?.passes(), || format!("from_top({lam})"));
    }
    let top = cfg.max_level + 2;
    let mut factorials = vec![Rational::one()];
    for k in 1..=top {
        factorials.push(&factorials[k - 1] * Rational::from_integer((k as i64).into()));
    }
    let levels: Vec<_> = (0..=top)
        .map(|k| {
            L1Vector::from_entries(
                k,
                partitions_of(k).into_iter().map(|p| {
                    let d = Rational::from_integer(syt_count(&p));
                    (p, &d * &d / &factorials[k])
                }),
            )
        })
        .collect();
    let sys = CoherentSystem::new(YoungGraph, levels)?;
    t.record(check_harmonic(&sys)?.passes(), || {
        format!("Plancherel up to level {top}")
    });
    Ok(t.finish())
}

fn characters(cfg: &VerifyConfig) -> Result<CheckOutcome> {
    let mut t = Tally::new("character-functions");
    let g = GtGraph::quantum(BetaSign::Minus).at(cfg.q.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xc4a7);
    let n = cfg.max_level.max(1);
    let tops: Vec<Signature> = window(n, 1).into_iter().step_by(3).collect();
    let systems = tops
        .iter()
        .map(|lam| from_top(&g, &L1Vector::delta(n, lam.clone())))
        .collect::<Result<Vec<_>>>()?;
    for (lam, sys) in tops.iter().zip(&systems) {
        for k in 0..n {
            let p = TorusPoint::random(k, &mut rng);
            let v = coherence_check(sys, k, &p, cfg.tol)?;
            t.record(v.passes(), || {
                format!("coherence of from_top({lam}) at level {k}: {}", v.defect)
            });
        }
        let p = TorusPoint::random(n, &mut rng);
        let v = adjoint_check(sys, n, &p, cfg.tol)?;
        t.record(v.passes(), || format!("adjoint of from_top({lam}): {}", v.defect));
    }
    for a in &systems {
        for b in systems.iter().take(3) {
            let p = TorusPoint::random(n, &mut rng);
            let v = multiplicativity_check(a, b, n, &p, cfg.tol)?;
            t.record(v.passes(), || format!("multiplicativity defect {}", v.defect));
            let mass = character_product(a, b, n)?.mass();
            t.record(mass.is_one(), || format!("product mass {mass}"));
        }
    }
    Ok(t.finish())
}

fn lr_products(cfg: &VerifyConfig) -> Result<CheckOutcome> {
    let mut t = Tally::new("lr-products");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x11);
    for n in 1..=cfg.max_level {
        let w = window(n, cfg.part_bound.min(2));
        for _ in 0..10 {
            let mu = &w[rng.random_range(0..w.len())];
            let nu = &w[rng.random_range(0..w.len())];
            let x: Vec<Rational> = (0..n)
                .map(|_| rational(rng.random_range(1..=9), rng.random_range(1..=9)))
                .collect();
            let mut sum = Rational::zero();
            for (lam, c) in tensor_terms(mu, nu)? {
                sum += Rational::from_integer(c.into()) * schur_eval(&lam, &x)?;
            }
            let prod = schur_eval::<Rational>(mu, &x)? * schur_eval::<Rational>(nu, &x)?;
            t.record(sum == prod, || format!("s{mu} s{nu} at {x:?}"));
        }
    }
    Ok(t.finish())
}

fn sampling(cfg: &VerifyConfig) -> Result<CheckOutcome> {
    let mut t = Tally::new("sampler-marginals");
    let g = GtGraph::quantum(BetaSign::Minus).at(cfg.q.clone());
    let top = Signature::new((0..cfg.max_level as i64).rev().collect())?;
    let level = cfg.max_level / 2;
    let hist = down_histogram(&g, &top, level, cfg.samples, cfg.seed)?;
    let again = down_histogram(&g, &top, level, cfg.samples, cfg.seed)?;
    t.record(hist == again, || "histograms differ under the same seed".into());
    let exact = pushdown_chain(&g, &L1Vector::delta(cfg.max_level, top.clone()), level)?;
    let tv = to_f64(&empirical_tv(&hist, &exact));
    let bound = 3.0 * (exact.support_len() as f64 / cfg.samples.max(1) as f64).sqrt();
    t.record(tv < bound, || format!("TV {tv} from {top} exceeds {bound}"));
    Ok(t.finish())
}

/// Runs every check and returns one outcome per check.
pub fn verify_all(cfg: &VerifyConfig) -> Result<Vec<CheckOutcome>> {
    let checks: [fn(&VerifyConfig) -> Result<CheckOutcome>; 10] = [
        stochastic,
        degeneration,
        q_commutation,
        ring_laws,
        module_relation,
        duality,
        harmonic,
        characters,
        lr_products,
        sampling,
    ];
    checks.iter().map(|c| c(cfg)).collect()
}
