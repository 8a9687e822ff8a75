use std::sync::Arc;

use num_rational::BigRational;

use super::overlap::{overlap_graph, seed_overlaps, spectrum_verdict, OverlapGraph, SpectrumVerdict};
use super::probe::{dense_coincidence_probe, ProbeReport};
use crate::algebraic::{self, FieldElement, NumberField, PisotKind, PisotVerdict, RationalPolynomial};
use crate::substitution::{FinalLetters, Periodicity, Seed, Substitution};
use crate::tiling::{fixed_tiling, GeometricSubstitution, Patch, TilingError};

#[derive(Clone, Debug)]
pub struct CertifyConfig {
    pub n_max: u32,
    pub samples: usize,
    pub cap: usize,
    /// Return vectors are collected up to `window · max ω`.
    pub window: u32,
    pub tolerance: BigRational,
    /// Word length bound for the complexity check on integer inflations.
    pub periodicity_window: usize,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        Self {
            n_max: 24,
            samples: 64,
            cap: 10_000,
            window: 8,
            tolerance: algebraic::default_tolerance(),
            periodicity_window: 64,
        }
    }
}

/// The hypotheses of the pure-discrete-spectrum criterion for `φ`.
#[derive(Clone, Debug, PartialEq)]
pub struct HypothesisReport {
    /// Least power with a positive matrix, if primitive.
    pub primitive: Option<u32>,
    pub initial_injective: bool,
    pub final_letters: FinalLetters,
    pub pisot: Option<PisotKind>,
    pub non_periodic: Option<Periodicity>,
    pub theorem_applies: bool,
}

impl HypothesisReport {
    fn compute_applies(&mut self) {
        self.theorem_applies = self.primitive.is_some()
            && self.initial_injective
            && self.final_letters.constant
            && self.pisot == Some(PisotKind::Pisot)
            && !matches!(self.non_periodic, Some(Periodicity::PeriodicDetected { .. }) | None);
    }
}

/// Two right-aligned prototiles found densely eventually coincident.
#[derive(Clone, Debug)]
pub struct PairWitness {
    pub i: usize,
    pub j: usize,
    /// The probe runs under `φ^power`.
    pub power: u32,
    pub interval: (FieldElement, FieldElement),
    pub report: ProbeReport,
}

#[derive(Clone, Debug)]
pub struct CertificationReport {
    pub substitution: Substitution,
    pub hypotheses: HypothesisReport,
    pub char_poly: RationalPolynomial,
    pub field: Option<Arc<NumberField>>,
    pub omega: Option<Vec<FieldElement>>,
    pub pisot: Option<PisotVerdict>,
    pub seed: Option<Seed>,
    pub graph: Option<OverlapGraph>,
    pub return_vectors: Vec<FieldElement>,
    pub span_rank: usize,
    pub overlap_verdict: SpectrumVerdict,
    pub prototile_pair: Option<PairWitness>,
    pub verdict: SpectrumVerdict,
    pub notes: Vec<String>,
}

fn order_of_permutation(p: &[usize]) -> Option<u32> {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if seen[x] {
            return None;
        }
        seen[x] = true;
    }
    let mut order = 1u64;
    for start in 0..p.len() {
        let mut len = 1u64;
        let mut x = p[start];
        while x != start {
            x = p[x];
            len += 1;
        }
        order = num_integer::lcm(order, len);
    }
    u32::try_from(order).ok()
}

/// Power `m` of `φ` under which the prototile probe runs: the least
/// multiple of the order of the first-letter permutation that is at least
/// the final-letter stabilising power.
pub fn prototile_probe_power(sub: &Substitution) -> u32 {
    let order = order_of_permutation(&sub.first_letter_map()).unwrap_or(1);
    let k = sub.final_letters_eventually_constant().power.unwrap_or(1);
    k.div_ceil(order) * order
}

/// Searches `i < j` for right-aligned prototiles `ρ_i - ω_i`, `ρ_j - ω_j`
/// that are eventually coincident on at least 99% of `[-ω_l/λ^m, 0]`,
/// where `l` is the eventual final letter.
pub fn find_coincident_prototile_pair(
    geo: &GeometricSubstitution,
    n_max: u32,
    samples: usize,
) -> Result<Option<PairWitness>, TilingError> {
    let sub = geo.substitution();
    let m = prototile_probe_power(sub);
    let psi = geo.power(m)?;
    let f = geo.field();
    let omega = geo.omega();
    let l_len = match sub.final_letters_eventually_constant().letter {
        Some(l) => omega[l].clone(),
        None => omega.iter().min().unwrap().clone(),
    };
    let eps = &l_len * &psi.inflation().inverse().unwrap();
    let (u, v) = (-&eps, f.zero());
    let threshold = f.from_rational(BigRational::new(99.into(), 100.into()));
    let d = sub.size();
    for i in 0..d {
        for j in i + 1..d {
            let pi = Patch::new(vec![geo.tile(i, -&omega[i])]);
            let pj = Patch::new(vec![geo.tile(j, -&omega[j])]);
            let report = match dense_coincidence_probe(&psi, &pi, &pj, &u, &v, samples, n_max) {
                Ok(r) => r,
                Err(_) => continue,
            };
            if report.coverage >= threshold {
                return Ok(Some(PairWitness {
                    i,
                    j,
                    power: m,
                    interval: (u, v),
                    report,
                }));
            }
        }
    }
    Ok(None)
}

/// Runs every hypothesis check, the overlap algorithm and the prototile
/// probe. The overall verdict is `PDS_CERTIFIED_BY_THEOREM` when the
/// hypotheses hold and the overlap verdict otherwise.
pub fn theorem_certify(sub: &Substitution, cfg: &CertifyConfig) -> CertificationReport {
    let matrix = sub.abelianization();
    let char_poly = algebraic::char_poly(matrix.rows());
    let mut hyp = HypothesisReport {
        primitive: sub.is_primitive(),
        initial_injective: sub.initial_letter_injective(),
        final_letters: sub.final_letters_eventually_constant(),
        pisot: None,
        non_periodic: None,
        theorem_applies: false,
    };
    let mut report = CertificationReport {
        substitution: sub.clone(),
        hypotheses: hyp.clone(),
        char_poly,
        field: None,
        omega: None,
        pisot: None,
        seed: None,
        graph: None,
        return_vectors: Vec::new(),
        span_rank: 0,
        overlap_verdict: SpectrumVerdict::Inconclusive {
            reason: "overlap algorithm not run".into(),
        },
        prototile_pair: None,
        verdict: SpectrumVerdict::Inconclusive {
            reason: "not evaluated".into(),
        },
        notes: Vec::new(),
    };
    let fail = |mut report: CertificationReport, hyp: HypothesisReport, reason: String| {
        report.hypotheses = hyp;
        report.overlap_verdict = SpectrumVerdict::Inconclusive { reason: reason.clone() };
        report.verdict = SpectrumVerdict::Inconclusive { reason };
        report
    };
    if hyp.primitive.is_none() {
        return fail(report, hyp, "substitution is not primitive".into());
    }
    let geo = match GeometricSubstitution::new(sub) {
        Ok(g) => g,
        Err(e) => return fail(report, hyp, e.to_string()),
    };
    report.field = Some(Arc::clone(geo.field()));
    report.omega = Some(geo.omega().to_vec());
    match algebraic::pisot_test(geo.field(), &cfg.tolerance) {
        Ok(v) => {
            hyp.pisot = Some(v.kind);
            report.pisot = Some(v);
        }
        Err(e) => report.notes.push(format!("pisot test: {e}")),
    }
    if geo.field().degree() == 1 {
        report
            .notes
            .push("integer inflation: Pisot condition holds vacuously (no other conjugates)".into());
    }
    match sub.periodicity_given_degree(geo.field().degree(), cfg.periodicity_window) {
        Ok(p) => hyp.non_periodic = Some(p),
        Err(e) => report.notes.push(format!("periodicity: {e}")),
    }
    hyp.compute_applies();

    match sub.admissible_seed() {
        Ok(seed) => {
            report.seed = Some(seed);
            match fixed_tiling(&geo, seed) {
                Ok(tiling) => {
                    let seeds = seed_overlaps(&geo, &tiling, cfg.window);
                    let graph = overlap_graph(&geo, &seeds.classes, cfg.cap);
                    report.overlap_verdict =
                        spectrum_verdict(&graph, seeds.span_rank, geo.field().degree());
                    report.span_rank = seeds.span_rank;
                    report.return_vectors = seeds.return_vectors;
                    report.graph = Some(graph);
                }
                Err(e) => {
                    report.overlap_verdict = SpectrumVerdict::Inconclusive { reason: e.to_string() }
                }
            }
        }
        Err(e) => report.overlap_verdict = SpectrumVerdict::Inconclusive { reason: e.to_string() },
    }
    match find_coincident_prototile_pair(&geo, cfg.n_max, cfg.samples) {
        Ok(p) => report.prototile_pair = p,
        Err(e) => report.notes.push(format!("prototile probe: {e}")),
    }
    if report.prototile_pair.is_none() && hyp.theorem_applies {
        report
            .notes
            .push("no densely coincident prototile pair found within n_max".into());
    }
    report.verdict = if hyp.theorem_applies {
        SpectrumVerdict::PdsCertifiedByTheorem
    } else {
        report.overlap_verdict.clone()
    };
    report.hypotheses = hyp;
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn certify(images: &[&str]) -> CertificationReport {
        theorem_certify(&Substitution::from_digits(images).unwrap(), &CertifyConfig::default())
    }

    #[test]
    fn probe_powers() {
        let s = |i: &[&str]| Substitution::from_digits(i).unwrap();
        assert_eq!(prototile_probe_power(&s(&["21", "1"])), 2);
        assert_eq!(prototile_probe_power(&s(&["21", "3", "4", "5", "1"])), 5);
        assert_eq!(prototile_probe_power(&s(&["12", "21"])), 1);
    }

    #[test]
    fn golden_certified() {
        let r = certify(&["21", "1"]);
        assert!(r.hypotheses.theorem_applies);
        assert_eq!(r.verdict, SpectrumVerdict::PdsCertifiedByTheorem);
        assert_eq!(r.overlap_verdict, SpectrumVerdict::PdsConsistentByOverlap);
        let w = r.prototile_pair.unwrap();
        assert_eq!((w.i, w.j, w.power), (0, 1, 2));
    }

    #[test]
    fn thue_morse_rejected() {
        let r = certify(&["12", "21"]);
        assert!(!r.hypotheses.theorem_applies);
        assert!(!r.hypotheses.final_letters.constant);
        assert_eq!(r.verdict.label(), "NOT_PDS_EVIDENCE");
        assert!(r.prototile_pair.is_none());
    }

    #[test]
    fn non_pisot_rejected() {
        let r = certify(&["2", "1112"]);
        assert_eq!(r.hypotheses.pisot, Some(PisotKind::NotPisot));
        assert!(!r.hypotheses.theorem_applies);
        assert_ne!(r.verdict, SpectrumVerdict::PdsCertifiedByTheorem);
    }

    #[test]
    fn non_primitive_inconclusive() {
        let r = certify(&["1", "2"]);
        assert_eq!(r.verdict.label(), "INCONCLUSIVE");
        assert!(r.hypotheses.primitive.is_none());
    }
}
