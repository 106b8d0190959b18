//! Seeded property suite over every module, with negative controls.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::checks::{self, CheckReport, CoassocColours, Labelled, Residual};
use crate::error::Result;
use crate::exec::Exec;
use crate::freealg::{ColourTag, FreeElem};
use crate::model::{default_q, standard_registry, ModelSpec, DIM};
use crate::pairing;
use crate::ring::{rat, LaurentPoly, Rational, Substitution, VarRegistry};
use crate::tensor::{embed_leg, kron, leg_permutation, Leg, RingMatrix};

#[derive(Debug, Clone)]
pub struct SelftestConfig {
    pub seed: u64,
    pub random_triples: usize,
    pub corrupt: bool,
    pub exec: Exec,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            seed: 0,
            random_triples: 20,
            corrupt: false,
            exec: Exec::default(),
        }
    }
}

/// Reports sorted by name.
#[derive(Debug, Clone)]
pub struct SelftestSummary {
    pub reports: Vec<CheckReport>,
}

impl SelftestSummary {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckReport> {
        self.reports.iter().filter(|r| !r.passed)
    }

    /// Fixed-width summary table.
    pub fn table(&self) -> String {
        let width = self
            .reports
            .iter()
            .map(|r| r.name.len())
            .max()
            .unwrap_or(4)
            .max(4);
        let mut out = format!("{:<width$}  result\n", "check");
        for r in &self.reports {
            let verdict = match (r.passed, r.negative_control) {
                (true, false) => "pass",
                (true, true) => "pass (fails as expected)",
                (false, false) => "FAIL",
                (false, true) => "FAIL (control did not fail)",
            };
            out.push_str(&format!("{:<width$}  {verdict}\n", r.name));
        }
        let failed = self.failures().count();
        out.push_str(&format!(
            "{} checks, {} failed\n",
            self.reports.len(),
            failed
        ));
        out
    }
}

pub fn random_rational(rng: &mut impl Rng) -> Rational {
    loop {
        let n: i64 = rng.gen_range(-9..=9);
        if n != 0 {
            return rat(n, rng.gen_range(1..=9));
        }
    }
}

pub fn random_colour(rng: &mut impl Rng) -> ColourTag {
    ColourTag::rational(random_rational(rng)).expect("nonzero")
}

/// `count` seeded assignments of `width` random rational colours.
pub fn random_colour_sets(seed: u64, count: usize, width: usize) -> Vec<Vec<ColourTag>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..width).map(|_| random_colour(&mut rng)).collect())
        .collect()
}

pub fn random_poly(rng: &mut impl Rng, reg: &Arc<VarRegistry>, max_terms: usize) -> LaurentPoly {
    let n = rng.gen_range(0..=max_terms);
    LaurentPoly::from_terms(
        reg,
        (0..n).map(|_| {
            let exps: Vec<i32> = (0..reg.len()).map(|_| rng.gen_range(-2..=2)).collect();
            (exps, random_rational(rng))
        }),
    )
}

fn random_matrix(rng: &mut impl Rng, reg: &Arc<VarRegistry>, n: usize) -> RingMatrix {
    let rows = (0..n)
        .map(|_| (0..n).map(|_| random_poly(rng, reg, 2)).collect())
        .collect();
    RingMatrix::from_rows(rows).expect("non-empty")
}

fn ring_axioms(rng: &mut ChaCha8Rng, samples: usize) -> CheckReport {
    let reg = VarRegistry::new(["q", "l", "m"]).expect("distinct names");
    let mut parts = Vec::new();
    for s in 0..samples {
        let (a, b, c) = (
            random_poly(rng, &reg, 3),
            random_poly(rng, &reg, 3),
            random_poly(rng, &reg, 3),
        );
        let assoc = &(&(&a * &b) * &c) - &(&a * &(&b * &c));
        let dist = &(&a * &(&b + &c)) - &(&(&a * &b) + &(&a * &c));
        let comm = &(&a * &b) - &(&b * &a);
        let neg = &(&a - &b) + &(&b - &a);
        parts.push(Labelled::new(format!("{s}: (ab)c - a(bc)"), assoc));
        parts.push(Labelled::new(format!("{s}: a(b+c) - ab - ac"), dist));
        parts.push(Labelled::new(format!("{s}: ab - ba"), comm));
        parts.push(Labelled::new(format!("{s}: (a-b) + (b-a)"), neg));
    }
    CheckReport::new("ring.axioms", BTreeMap::new(), Residual::Values(parts))
}

fn substitution_hom(rng: &mut ChaCha8Rng, samples: usize) -> Result<CheckReport> {
    let reg = VarRegistry::new(["q", "l", "m"])?;
    let mut parts = Vec::new();
    for s in 0..samples {
        let (a, b) = (random_poly(rng, &reg, 3), random_poly(rng, &reg, 3));
        let image = LaurentPoly::monomial(&reg, random_rational(rng), vec![1, -1, 0]);
        let sub =
            Substitution::new()
                .monomial("l", image)?
                .rational(&reg, "m", random_rational(rng))?;
        let f = |x: &LaurentPoly| x.substitute(&sub);
        parts.push(Labelled::new(
            format!("{s}: f(ab) - f(a)f(b)"),
            &f(&(&a * &b))? - &(&f(&a)? * &f(&b)?),
        ));
        parts.push(Labelled::new(
            format!("{s}: f(a+b) - f(a) - f(b)"),
            &f(&(&a + &b))? - &(&f(&a)? + &f(&b)?),
        ));
    }
    Ok(CheckReport::new(
        "ring.substitution",
        BTreeMap::new(),
        Residual::Values(parts),
    ))
}

fn tensor_properties(rng: &mut ChaCha8Rng, samples: usize) -> Result<CheckReport> {
    let reg = VarRegistry::new(["q", "l"])?;
    let mut parts = Vec::new();
    for s in 0..samples {
        let (a, b, c, d) = (
            random_matrix(rng, &reg, DIM),
            random_matrix(rng, &reg, DIM),
            random_matrix(rng, &reg, DIM),
            random_matrix(rng, &reg, DIM),
        );
        let mixed = kron(&a, &b)
            .mul(&kron(&c, &d))?
            .sub(&kron(&a.mul(&c)?, &b.mul(&d)?))?;
        parts.push(Labelled::new(
            format!("{s}: (A x B)(C x D) - AC x BD"),
            mixed,
        ));
        let r = random_matrix(rng, &reg, DIM * DIM);
        let i2 = RingMatrix::identity(&reg, DIM);
        let p12 = leg_permutation(&reg, DIM, 3, 0, 1);
        let r23 = embed_leg(&r, Leg::L23, DIM)?;
        parts.push(Labelled::new(
            format!("{s}: R12 - R x I"),
            embed_leg(&r, Leg::L12, DIM)?.sub(&kron(&r, &i2))?,
        ));
        parts.push(Labelled::new(
            format!("{s}: R23 - I x R"),
            r23.sub(&kron(&i2, &r))?,
        ));
        parts.push(Labelled::new(
            format!("{s}: R13 - P12 R23 P12"),
            embed_leg(&r, Leg::L13, DIM)?.sub(&p12.mul(&r23)?.mul(&p12)?)?,
        ));
    }
    Ok(CheckReport::new(
        "tensor.properties",
        BTreeMap::new(),
        Residual::Matrices(parts),
    ))
}

type Job<'a> = Box<dyn Fn() -> Result<CheckReport> + Send + Sync + 'a>;

fn push<'a>(jobs: &mut Vec<(String, Job<'a>)>, name: String, job: Job<'a>) {
    jobs.push((name, job));
}

fn sym(name: &str) -> ColourTag {
    ColourTag::var(name).expect("valid name")
}

/// Runs the full suite.
pub fn run_selftest(cfg: &SelftestConfig) -> Result<SelftestSummary> {
    let reg = standard_registry();
    let mut model = ModelSpec::slq2_colour(&reg)?;
    if cfg.corrupt {
        model = model.corrupted();
    }
    let model = &model;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let mut reports = vec![
        ring_axioms(&mut rng, 25),
        substitution_hom(&mut rng, 25)?,
        tensor_properties(&mut rng, 10)?,
    ];

    let (l, m, n) = (sym("l"), sym("m"), sym("n"));
    let one = ColourTag::one();
    let six = CoassocColours::from_slice(&["a", "b", "l", "m", "k", "n"].map(sym));
    let exec = cfg.exec;

    let mut jobs: Vec<(String, Job)> = Vec::new();

    push(
        &mut jobs,
        "model.relations".into(),
        Box::new(move || checks::check_rep_relations(model)),
    );
    for (tag, (a, b, c)) in [("symbolic", (&l, &m, &n)), ("unit", (&one, &one, &one))] {
        let (a, b, c) = (a.clone(), b.clone(), c.clone());
        let (a2, b2, c2) = (a.clone(), b.clone(), c.clone());
        let (a3, b3, c3) = (a.clone(), b.clone(), c.clone());
        let (a4, b4, c4) = (a.clone(), b.clone(), c.clone());
        let (a5, b5, c5) = (a.clone(), b.clone(), c.clone());
        push(
            &mut jobs,
            format!("ybe.{tag}"),
            Box::new(move || checks::check_cybe(model, &a, &b, &c)),
        );
        push(
            &mut jobs,
            format!("intertwining.{tag}"),
            Box::new(move || checks::check_intertwining(model, &a2, &b2, &c2)),
        );
        push(
            &mut jobs,
            format!("counit.{tag}"),
            Box::new(move || checks::check_counit_coloured(model, &a3, &b3, &c3)),
        );
        push(
            &mut jobs,
            format!("antipode.{tag}"),
            Box::new(move || checks::check_antipode_coloured(model, &a4, &b4, &c4)),
        );
        push(
            &mut jobs,
            format!("rtt.{tag}"),
            Box::new(move || {
                checks::check_rtt_consistency(
                    model,
                    &checks::derive_rtt_relations(model, &a5, &b5, &c5)?,
                )
            }),
        );
    }
    {
        let six = six.clone();
        push(
            &mut jobs,
            "coassoc.symbolic".into(),
            Box::new(move || checks::check_coassoc_coloured(model, &six)),
        );
    }
    push(
        &mut jobs,
        "coassoc.unit".into(),
        Box::new(move || checks::check_coassoc_coloured(model, &CoassocColours::unit())),
    );
    push(
        &mut jobs,
        "rtt.colour-scaling".into(),
        Box::new(move || {
            checks::check_colour_scaling(model, &sym("l"), &sym("m"), &sym("n"), &sym("c"))
        }),
    );

    for i in 0..cfg.random_triples {
        let (a, b, c) = (
            random_colour(&mut rng),
            random_colour(&mut rng),
            random_colour(&mut rng),
        );
        let extra: [ColourTag; 3] = std::array::from_fn(|_| random_colour(&mut rng));
        let (a2, b2, c2) = (a.clone(), b.clone(), c.clone());
        let (a3, b3, c3) = (a.clone(), b.clone(), c.clone());
        let (a4, b4, c4) = (a.clone(), b.clone(), c.clone());
        push(
            &mut jobs,
            format!("ybe.random[{i:02}]"),
            Box::new(move || checks::check_cybe(model, &a, &b, &c)),
        );
        push(
            &mut jobs,
            format!("counit.random[{i:02}]"),
            Box::new(move || checks::check_counit_coloured(model, &a2, &b2, &c2)),
        );
        push(
            &mut jobs,
            format!("antipode.random[{i:02}]"),
            Box::new(move || checks::check_antipode_coloured(model, &a3, &b3, &c3)),
        );
        push(
            &mut jobs,
            format!("coassoc.random[{i:02}]"),
            Box::new(move || {
                let c6 = CoassocColours::from_slice(&[
                    a4.clone(),
                    b4.clone(),
                    c4.clone(),
                    extra[0].clone(),
                    extra[1].clone(),
                    extra[2].clone(),
                ]);
                checks::check_coassoc_coloured(model, &c6)
            }),
        );
    }

    push(
        &mut jobs,
        "duality.symbolic".into(),
        Box::new(move || pairing::check_duality_compat(model, &sym("n"), 2, Exec::Sequential)),
    );
    for d in [0usize, 1, 2] {
        push(
            &mut jobs,
            format!("t-check.degree{d}"),
            Box::new(move || {
                let mut r =
                    pairing::truncated_t_check(model, d, &default_q(), Exec::Sequential)?.report;
                r.name = format!("t-check.degree{d}");
                Ok(r)
            }),
        );
    }

    push(
        &mut jobs,
        "control.ybe".into(),
        Box::new(move || {
            let perturbed = |a: &ColourTag, b: &ColourTag| -> Result<RingMatrix> {
                let mut r = model.build_r_coloured(a, b)?;
                let x = r.get(1, 2) * &model.colour(&a.pow(2).mul(&b.inv()))?;
                r.set(1, 2, x);
                Ok(r)
            };
            let inner = checks::check_cybe_with(perturbed, &sym("l"), &sym("m"), &sym("n"))?;
            Ok(CheckReport::negative_control(inner, "control.ybe"))
        }),
    );
    {
        let six = six.clone();
        push(
            &mut jobs,
            "control.coassoc".into(),
            Box::new(move || {
                let inner = checks::check_coassoc_coloured_with(model, &six, &sym("p"))?;
                Ok(CheckReport::negative_control(inner, "control.coassoc"))
            }),
        );
    }
    push(
        &mut jobs,
        "control.counit".into(),
        Box::new(move || {
            let (a, b, c) = (sym("l"), sym("m"), sym("n"));
            let inner = checks::check_counit_coloured_with(model, &a, &b, &c, (&sym("p"), &a))?;
            Ok(CheckReport::negative_control(inner, "control.counit"))
        }),
    );
    push(
        &mut jobs,
        "control.antipode".into(),
        Box::new(move || {
            let inner = checks::check_antipode_coloured_with(
                model,
                &sym("l"),
                &sym("m"),
                &sym("n"),
                &sym("p"),
            )?;
            Ok(CheckReport::negative_control(inner, "control.antipode"))
        }),
    );
    push(
        &mut jobs,
        "control.rtt".into(),
        Box::new(move || {
            let mut rel = checks::derive_rtt_relations(model, &sym("l"), &sym("m"), &sym("n"))?;
            let two = LaurentPoly::from_int(model.registry(), 2);
            let slot = rel
                .relations
                .iter()
                .position(|s| !s.relation.is_zero())
                .unwrap_or(0);
            rel.relations[slot].relation = rel.relations[slot].relation.scale(&two)?;
            Ok(CheckReport::negative_control(
                checks::check_rtt_consistency(model, &rel)?,
                "control.rtt",
            ))
        }),
    );
    push(
        &mut jobs,
        "control.duality".into(),
        Box::new(move || {
            let inner = pairing::check_duality_compat_with(
                model,
                &sym("n"),
                1,
                Exec::Sequential,
                drop_cj_rho,
            )?;
            Ok(CheckReport::negative_control(inner, "control.duality"))
        }),
    );

    let results = exec.map(&jobs, |(name, job)| {
        job().map(|mut r| {
            r.name = name.clone();
            r
        })
    });
    for r in results {
        reports.push(r?);
    }
    reports.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(SelftestSummary { reports })
}

/// `ρ` without the column factor: `t_ij ↦ c_i⁻¹·t_ij`.
pub fn drop_cj_rho(nu: &ColourTag, x: &FreeElem) -> Result<FreeElem> {
    let reg = x.registry().clone();
    x.map_words(|w| {
        let wt = -(w.0.iter().filter(|l| l.i == 1).count() as i32);
        Ok((w.clone(), nu.pow(wt).to_poly(&reg)?))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes_and_is_sorted() {
        let cfg = SelftestConfig {
            seed: 7,
            random_triples: 2,
            ..Default::default()
        };
        let s = run_selftest(&cfg).unwrap();
        let failed: Vec<_> = s.failures().map(|r| r.name.clone()).collect();
        assert!(failed.is_empty(), "{failed:?}");
        let names: Vec<_> = s.reports.iter().map(|r| r.name.clone()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
    }

    #[test]
    fn corrupted_model_fails() {
        let cfg = SelftestConfig {
            seed: 7,
            random_triples: 1,
            corrupt: true,
            ..Default::default()
        };
        assert!(!run_selftest(&cfg).unwrap().passed());
    }
}
