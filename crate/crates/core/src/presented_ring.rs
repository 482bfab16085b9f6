//! Graded commutative GF(2)-algebras by generators and homogeneous
//! relations: degreewise dimensions and monomial bases.
//!
//! This is the independent oracle against which resolution Betti numbers are
//! checked. Dimensions are computed by degree-slice linear algebra: in degree
//! `n`, the ideal slice is the span of `m * rel` over relations `rel` and
//! monomials `m` of complementary degree; the quotient dimension is the
//! monomial count minus that span's rank. In characteristic 2 commutative
//! and graded commutative coincide, so plain commutative monomial arithmetic
//! is correct in every degree.

use crate::error::{Error, Result};
use crate::gf2::{BitVec, SpanAccumulator};
use std::collections::HashMap;
use std::fmt::Write as _;

/// A monomial is an exponent vector over the declared generators.
pub type Monomial = Vec<u32>;

/// A homogeneous polynomial: a set of monomials (coefficients are 1 in GF(2)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    pub monomials: Vec<Monomial>,
}

#[derive(Clone)]
pub struct RingPresentation {
    generators: Vec<(String, usize)>,
    relations: Vec<Polynomial>,
}

impl RingPresentation {
    pub fn new(generators: Vec<(String, usize)>, relations: Vec<Polynomial>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for (name, degree) in &generators {
            if *degree == 0 {
                return Err(Error::InvalidSpec(format!(
                    "generator {name} must have positive degree"
                )));
            }
            if !seen.insert(name.clone()) {
                return Err(Error::InvalidSpec(format!("duplicate generator {name}")));
            }
        }
        let pres = RingPresentation {
            generators,
            relations: Vec::new(),
        };
        let mut checked = Vec::with_capacity(relations.len());
        for (k, rel) in relations.into_iter().enumerate() {
            if rel.monomials.is_empty() {
                return Err(Error::InvalidSpec(format!("relation {k} is empty")));
            }
            let d = pres.monomial_degree(&rel.monomials[0]);
            for m in &rel.monomials {
                if m.len() != pres.generators.len() {
                    return Err(Error::InvalidSpec(format!(
                        "relation {k} has a monomial of wrong arity"
                    )));
                }
                if pres.monomial_degree(m) != d {
                    return Err(Error::InvalidSpec(format!(
                        "relation {k} is not homogeneous"
                    )));
                }
            }
            checked.push(rel);
        }
        Ok(RingPresentation {
            relations: checked,
            ..pres
        })
    }

    pub fn generators(&self) -> &[(String, usize)] {
        &self.generators
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|(n, _)| n == name)
    }

    pub fn monomial_degree(&self, m: &Monomial) -> usize {
        m.iter()
            .zip(&self.generators)
            .map(|(&e, (_, d))| e as usize * d)
            .sum()
    }

    pub fn relation_degree(&self, k: usize) -> usize {
        self.monomial_degree(&self.relations[k].monomials[0])
    }

    /// All monomials of total degree `n`, in graded lexicographic order with
    /// the generator order as declared (earlier generators vary slowest,
    /// higher exponents first).
    pub fn monomials_of_degree(&self, n: usize) -> Vec<Monomial> {
        let degs: Vec<usize> = self.generators.iter().map(|(_, d)| *d).collect();
        let mut out = Vec::new();
        let mut cur = vec![0u32; degs.len()];
        enumerate_rec(&degs, 0, n, &mut cur, &mut out);
        out
    }

    fn ideal_slice(&self, n: usize, monos: &[Monomial]) -> Result<SpanAccumulator> {
        let index: HashMap<&Monomial, usize> =
            monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut span = SpanAccumulator::new(monos.len());
        for (k, rel) in self.relations.iter().enumerate() {
            let d = self.relation_degree(k);
            if d > n {
                continue;
            }
            for m in self.monomials_of_degree(n - d) {
                let mut row = BitVec::zeros(monos.len());
                for rm in &rel.monomials {
                    let prod: Monomial = m.iter().zip(rm).map(|(a, b)| a + b).collect();
                    let idx = index[&prod];
                    row.flip(idx);
                }
                span.insert(row);
            }
        }
        Ok(span)
    }

    /// Dimension of the degree-`n` component of the quotient algebra.
    pub fn dimension(&self, n: usize) -> Result<usize> {
        let monos = self.monomials_of_degree(n);
        if monos.len() > 200_000 {
            return Err(Error::ResourceBound(format!(
                "{} monomials in degree {n}",
                monos.len()
            )));
        }
        let span = self.ideal_slice(n, &monos)?;
        Ok(monos.len() - span.rank())
    }

    /// A deterministic basis of degree-`n` monomial residues: greedy
    /// selection in the fixed monomial order among residues independent
    /// modulo the ideal slice.
    pub fn monomial_basis(&self, n: usize) -> Result<Vec<Monomial>> {
        let monos = self.monomials_of_degree(n);
        if monos.len() > 200_000 {
            return Err(Error::ResourceBound(format!(
                "{} monomials in degree {n}",
                monos.len()
            )));
        }
        let mut span = self.ideal_slice(n, &monos)?;
        let mut basis = Vec::new();
        for (i, m) in monos.iter().enumerate() {
            let mut unit = BitVec::zeros(monos.len());
            unit.set(i, true);
            if span.insert(unit) {
                basis.push(m.clone());
            }
        }
        Ok(basis)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut out = String::new();
        for (e, (name, _)) in m.iter().zip(&self.generators) {
            match e {
                0 => {}
                1 => {
                    if !out.is_empty() {
                        out.push('*');
                    }
                    out.push_str(name);
                }
                _ => {
                    if !out.is_empty() {
                        out.push('*');
                    }
                    let _ = write!(out, "{name}^{e}");
                }
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }

    pub fn format_relation(&self, k: usize) -> String {
        self.relations[k]
            .monomials
            .iter()
            .map(|m| self.format_monomial(m))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Parses the plain-text presentation format: one `gen <name> <degree>`
    /// line per generator, one `rel <monomial> + <monomial> + ...` line per
    /// relation, monomials written as `*`-joined caret-exponent products.
    /// Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<RingPresentation> {
        let mut generators: Vec<(String, usize)> = Vec::new();
        let mut raw_relations: Vec<String> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("gen ") {
                let mut it = rest.split_whitespace();
                let name = it
                    .next()
                    .ok_or_else(|| Error::Parse(format!("line {}: missing name", lineno + 1)))?;
                let degree: usize = it
                    .next()
                    .ok_or_else(|| Error::Parse(format!("line {}: missing degree", lineno + 1)))?
                    .parse()
                    .map_err(|_| Error::Parse(format!("line {}: bad degree", lineno + 1)))?;
                if it.next().is_some() {
                    return Err(Error::Parse(format!(
                        "line {}: trailing tokens after generator",
                        lineno + 1
                    )));
                }
                generators.push((name.to_string(), degree));
            } else if let Some(rest) = line.strip_prefix("rel ") {
                raw_relations.push(rest.to_string());
            } else {
                return Err(Error::Parse(format!(
                    "line {}: expected 'gen' or 'rel'",
                    lineno + 1
                )));
            }
        }
        let names: HashMap<&str, usize> = generators
            .iter()
            .enumerate()
            .map(|(i, (n, _))| (n.as_str(), i))
            .collect();
        let mut relations = Vec::new();
        for raw in &raw_relations {
            let mut monomials = Vec::new();
            for term in raw.split('+') {
                let term = term.trim();
                if term.is_empty() {
                    return Err(Error::Parse(format!("empty term in relation '{raw}'")));
                }
                let mut exps = vec![0u32; generators.len()];
                if term != "1" {
                    for factor in term.split('*') {
                        let factor = factor.trim();
                        let (name, power) = match factor.split_once('^') {
                            Some((n, p)) => (
                                n.trim(),
                                p.trim().parse::<u32>().map_err(|_| {
                                    Error::Parse(format!("bad exponent in '{factor}'"))
                                })?,
                            ),
                            None => (factor, 1),
                        };
                        let idx = *names
                            .get(name)
                            .ok_or_else(|| Error::Parse(format!("unknown generator '{name}'")))?;
                        exps[idx] += power;
                    }
                }
                monomials.push(exps);
            }
            relations.push(Polynomial { monomials });
        }
        RingPresentation::new(generators, relations)
    }
}

fn enumerate_rec(
    degs: &[usize],
    k: usize,
    rem: usize,
    cur: &mut Vec<u32>,
    out: &mut Vec<Monomial>,
) {
    if k == degs.len() {
        if rem == 0 {
            out.push(cur.clone());
        }
        return;
    }
    if k == degs.len() - 1 {
        if rem.is_multiple_of(degs[k]) {
            cur[k] = (rem / degs[k]) as u32;
            out.push(cur.clone());
            cur[k] = 0;
        }
        return;
    }
    let max_e = rem / degs[k];
    for e in (0..=max_e).rev() {
        cur[k] = e as u32;
        enumerate_rec(degs, k + 1, rem - e * degs[k], cur, out);
    }
    cur[k] = 0;
}

/// The shipped presentation corpus, embedded from the plain-text files under
/// `presentations/`.
pub mod corpus {
    use super::RingPresentation;

    pub const NAMES: [&str; 6] = [
        "theorem_1_5_rho3",
        "theorem_1_5_rho4plus",
        "prop_2_1_4",
        "ring_Gz",
        "ring_cyclic2",
        "ring_cyclic2k",
    ];

    const THEOREM_1_5_RHO3: &str = include_str!("../../../presentations/theorem_1_5_rho3.txt");
    const THEOREM_1_5_RHO4PLUS: &str =
        include_str!("../../../presentations/theorem_1_5_rho4plus.txt");
    const PROP_2_1_4: &str = include_str!("../../../presentations/prop_2_1_4.txt");
    const RING_GZ: &str = include_str!("../../../presentations/ring_Gz.txt");
    const RING_CYCLIC2: &str = include_str!("../../../presentations/ring_cyclic2.txt");
    const RING_CYCLIC2K: &str = include_str!("../../../presentations/ring_cyclic2k.txt");

    pub fn by_name(name: &str) -> Option<RingPresentation> {
        let text = match name {
            "theorem_1_5_rho3" => THEOREM_1_5_RHO3,
            "theorem_1_5_rho4plus" => THEOREM_1_5_RHO4PLUS,
            "prop_2_1_4" => PROP_2_1_4,
            "ring_Gz" => RING_GZ,
            "ring_cyclic2" => RING_CYCLIC2,
            "ring_cyclic2k" => RING_CYCLIC2K,
            _ => return None,
        };
        Some(RingPresentation::parse(text).expect("shipped presentation parses"))
    }

    pub fn theorem_1_5_rho3() -> RingPresentation {
        by_name("theorem_1_5_rho3").unwrap()
    }

    pub fn theorem_1_5_rho4plus() -> RingPresentation {
        by_name("theorem_1_5_rho4plus").unwrap()
    }

    pub fn prop_2_1_4() -> RingPresentation {
        by_name("prop_2_1_4").unwrap()
    }

    pub fn ring_gz() -> RingPresentation {
        by_name("ring_Gz").unwrap()
    }

    pub fn ring_cyclic2() -> RingPresentation {
        by_name("ring_cyclic2").unwrap()
    }

    pub fn ring_cyclic2k() -> RingPresentation {
        by_name("ring_cyclic2k").unwrap()
    }
}
