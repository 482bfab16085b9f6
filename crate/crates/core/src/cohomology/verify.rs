//! Checks a presented ring against the computed cohomology: relations as cup
//! identities, monomial spanning in each degree, and the Hilbert comparison
//! between Betti numbers and the presented-ring oracle.
//!
//! Ambiguously pinned generators are handled by quantification: every
//! candidate tuple is evaluated and reported, and the verdict asks for at
//! least one tuple satisfying everything. Nothing assumes uniqueness.

use super::generators::{CandidateSet, NamedGeneratorSet};
use super::{lift, ChainMapLift, CohomologyClass};
use crate::error::{Error, Result};
use crate::gf2::SpanAccumulator;
use crate::presented_ring::RingPresentation;
use crate::resolution::Resolution;
use std::collections::HashMap;

/// A presentation generator bound to computed cohomology: either a single
/// pinned class or an affine candidate set.
pub enum BindingValue {
    Fixed(CohomologyClass),
    Candidates(CandidateSet),
}

pub struct GeneratorBinding {
    pub name: String,
    pub value: BindingValue,
}

/// Binds the presentation's generators to the named generator dictionary,
/// by name, checking degrees.
pub fn bind_generators(
    pres: &RingPresentation,
    gens: &NamedGeneratorSet,
) -> Result<Vec<GeneratorBinding>> {
    pres.generators()
        .iter()
        .map(|(name, degree)| {
            if let Some(class) = gens.class(name) {
                if class.degree() != *degree {
                    return Err(Error::DimensionMismatch(format!(
                        "generator {name}: presentation degree {degree}, class degree {}",
                        class.degree()
                    )));
                }
                Ok(GeneratorBinding {
                    name: name.clone(),
                    value: BindingValue::Fixed(class.clone()),
                })
            } else if let Some(set) = gens.candidates(name) {
                if set.degree != *degree {
                    return Err(Error::DimensionMismatch(format!(
                        "generator {name}: presentation degree {degree}, candidate degree {}",
                        set.degree
                    )));
                }
                Ok(GeneratorBinding {
                    name: name.clone(),
                    value: BindingValue::Candidates(set.clone()),
                })
            } else {
                Err(Error::PinningFailed(format!(
                    "no named class bound for presentation generator {name}"
                )))
            }
        })
        .collect()
}

/// Result of checking one candidate tuple.
pub struct TupleOutcome {
    /// Coordinates chosen for each ambiguous generator, by name.
    pub assignment: Vec<(String, String)>,
    /// One flag per presentation relation.
    pub relations_pass: Vec<bool>,
    /// For each failing relation, the computed residual (left side plus
    /// right side) expressed in generator monomials where possible.
    pub relation_residuals: Vec<Option<String>>,
    /// One flag per degree `1..=max_degree`: monomials span `H^n`.
    pub spans: Vec<bool>,
    pub passes: bool,
}

pub struct PresentationReport {
    pub group: String,
    pub max_degree: usize,
    pub relation_texts: Vec<String>,
    pub betti: Vec<usize>,
    pub ring_dims: Vec<usize>,
    pub hilbert_match: bool,
    pub tuples: Vec<TupleOutcome>,
    /// Indices into `tuples` of the tuples passing all relations and spans.
    pub passing_tuples: Vec<usize>,
    /// True iff the Hilbert comparison holds and at least one tuple passes.
    pub verdict: bool,
}

/// Writes a nonzero class as a sum of generator monomials of its degree, for
/// transparent reporting of failed relations. Falls back to raw coordinates
/// when the class lies outside the monomial span.
fn express_residual(
    res: &Resolution,
    pres: &RingPresentation,
    eval: &mut MonomialEvaluator,
    degree: usize,
    residual: &CohomologyClass,
) -> String {
    use crate::gf2::BitMatrix;
    let monos = pres.monomials_of_degree(degree);
    let mut mat = BitMatrix::zeros(monos.len(), res.rank(degree));
    for (k, m) in monos.iter().enumerate() {
        let c = eval.class_of(m);
        for i in c.coords().ones() {
            mat.set(k, i, true);
        }
    }
    match mat.transposed().solve(residual.coords()) {
        Some(x) => {
            let terms: Vec<String> = x.ones().map(|k| pres.format_monomial(&monos[k])).collect();
            if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" + ")
            }
        }
        None => format!("<outside monomial span: {}>", residual.coords_string()),
    }
}

struct MonomialEvaluator<'a> {
    res: &'a Resolution,
    lifts: Vec<&'a ChainMapLift>,
    classes: Vec<&'a CohomologyClass>,
    memo: HashMap<Vec<u32>, CohomologyClass>,
}

impl<'a> MonomialEvaluator<'a> {
    fn class_of(&mut self, mono: &[u32]) -> CohomologyClass {
        if mono.iter().all(|&e| e == 0) {
            return CohomologyClass::unit(self.res);
        }
        if let Some(hit) = self.memo.get(mono) {
            return hit.clone();
        }
        let i = mono.iter().position(|&e| e > 0).unwrap();
        let mut rest = mono.to_vec();
        rest[i] -= 1;
        let tail = self.class_of(&rest);
        let value = if tail.degree() == 0 {
            // Multiplying the unit: the generator itself.
            self.classes[i].clone()
        } else {
            self.lifts[i]
                .evaluate(&tail)
                .expect("lift bound covers every monomial degree")
        };
        self.memo.insert(mono.to_vec(), value.clone());
        value
    }
}

/// Verifies a ring presentation against the computed cohomology up to
/// `max_degree`: (a) each relation as a cup-product identity, per candidate
/// tuple; (b) monomials in the bound generators span every degree; (c) Betti
/// numbers match the presented-ring dimensions.
pub fn verify_presentation(
    res: &Resolution,
    pres: &RingPresentation,
    bindings: &[GeneratorBinding],
    max_degree: usize,
) -> Result<PresentationReport> {
    if bindings.len() != pres.generators().len() {
        return Err(Error::DimensionMismatch(
            "one binding per presentation generator is required".into(),
        ));
    }
    if max_degree > res.max_degree() {
        return Err(Error::DegreeRange(format!(
            "verification degree {max_degree} exceeds resolution depth {}",
            res.max_degree()
        )));
    }
    for k in 0..pres.relations().len() {
        if pres.relation_degree(k) > max_degree {
            return Err(Error::DegreeRange(format!(
                "relation '{}' has degree {} beyond the verification bound {max_degree}",
                pres.format_relation(k),
                pres.relation_degree(k)
            )));
        }
    }

    // Candidate classes and lifts per generator. Fixed generators have a
    // single entry; ambiguous ones get one per candidate.
    let mut per_gen: Vec<Vec<(CohomologyClass, ChainMapLift)>> = Vec::new();
    for binding in bindings {
        let classes: Vec<CohomologyClass> = match &binding.value {
            BindingValue::Fixed(c) => vec![c.clone()],
            BindingValue::Candidates(set) => set.iter().collect(),
        };
        let mut entries = Vec::with_capacity(classes.len());
        for class in classes {
            let l = lift(res, &class, max_degree)?;
            entries.push((class, l));
        }
        per_gen.push(entries);
    }
    let tuple_count: usize = per_gen.iter().map(|v| v.len()).product();
    if tuple_count > 4096 {
        return Err(Error::ResourceBound(format!(
            "{tuple_count} candidate tuples exceed the enumeration bound"
        )));
    }

    let betti: Vec<usize> = (0..=max_degree).map(|n| res.rank(n)).collect();
    let mut ring_dims = Vec::with_capacity(max_degree + 1);
    for n in 0..=max_degree {
        ring_dims.push(pres.dimension(n)?);
    }
    let hilbert_match = betti == ring_dims;

    let relation_texts: Vec<String> = (0..pres.relations().len())
        .map(|k| pres.format_relation(k))
        .collect();

    let mut tuples = Vec::with_capacity(tuple_count);
    let mut passing_tuples = Vec::new();
    let mut selector = vec![0usize; per_gen.len()];
    for tuple_idx in 0..tuple_count {
        let classes: Vec<&CohomologyClass> = selector
            .iter()
            .zip(&per_gen)
            .map(|(&s, v)| &v[s].0)
            .collect();
        let lifts: Vec<&ChainMapLift> = selector
            .iter()
            .zip(&per_gen)
            .map(|(&s, v)| &v[s].1)
            .collect();
        let mut eval = MonomialEvaluator {
            res,
            lifts,
            classes,
            memo: HashMap::new(),
        };

        let mut relations_pass = Vec::with_capacity(pres.relations().len());
        let mut relation_residuals = Vec::with_capacity(pres.relations().len());
        for (k, rel) in pres.relations().iter().enumerate() {
            let mut acc: Option<CohomologyClass> = None;
            for m in &rel.monomials {
                let c = eval.class_of(m);
                acc = Some(match acc {
                    None => c,
                    Some(prev) => prev.add(&c),
                });
            }
            let residual = acc.expect("relations are nonempty");
            if residual.is_zero() {
                relations_pass.push(true);
                relation_residuals.push(None);
            } else {
                relations_pass.push(false);
                relation_residuals.push(Some(express_residual(
                    res,
                    pres,
                    &mut eval,
                    pres.relation_degree(k),
                    &residual,
                )));
            }
        }

        let mut spans = Vec::with_capacity(max_degree);
        for n in 1..=max_degree {
            let mut span = SpanAccumulator::new(res.rank(n));
            for m in pres.monomials_of_degree(n) {
                span.insert(eval.class_of(&m).coords().clone());
            }
            spans.push(span.rank() == res.rank(n));
        }

        let assignment: Vec<(String, String)> = selector
            .iter()
            .zip(bindings)
            .zip(&per_gen)
            .filter(|((_, b), _)| matches!(b.value, BindingValue::Candidates(_)))
            .map(|((&s, b), v)| (b.name.clone(), v[s].0.coords_string()))
            .collect();

        let passes = relations_pass.iter().all(|&p| p) && spans.iter().all(|&s| s);
        if passes {
            passing_tuples.push(tuple_idx);
        }
        tuples.push(TupleOutcome {
            assignment,
            relations_pass,
            relation_residuals,
            spans,
            passes,
        });

        // Advance the mixed-radix selector.
        for (k, s) in selector.iter_mut().enumerate() {
            *s += 1;
            if *s < per_gen[k].len() {
                break;
            }
            *s = 0;
        }
    }

    let verdict = hilbert_match && !passing_tuples.is_empty();
    Ok(PresentationReport {
        group: res.group().spec().key(),
        max_degree,
        relation_texts,
        betti,
        ring_dims,
        hilbert_match,
        tuples,
        passing_tuples,
        verdict,
    })
}
