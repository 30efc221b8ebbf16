//! Extending prescribed values to a homomorphism on a finite structure by
//! closing them under the operation and conjugation.

use std::collections::HashMap;

use super::hom::Hom;
use super::structure::ConjStructure;
use crate::carriers::Elem;

/// Largest finite domain the closure search will run on by default.
pub const DEFAULT_EXTENSION_BOUND: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extension {
    /// The prescribed values generate the whole domain and extend to a
    /// unique homomorphism; images are listed in the domain's element order.
    Unique(Vec<Elem>),
    /// Two derivations give `at` different images.
    Conflict { at: Elem, first: Elem, second: Elem },
    /// The prescribed values are consistent but do not generate `missing`,
    /// so an extension, if any, is not determined by them.
    NotGenerated { generated: usize, missing: Elem },
}

impl Extension {
    pub fn unique(&self) -> Option<&[Elem]> {
        match self {
            Extension::Unique(images) => Some(images),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExtendError {
    #[error("`{0}` is infinite; closure search needs a finite domain")]
    InfiniteDomain(String),
    #[error("`{name}` has {size} elements, above the search bound {bound}")]
    TooLarge { name: String, size: usize, bound: usize },
    #[error("prescribed point {0} is not in the domain")]
    NotInDomain(Elem),
}

/// Closes `prescribed` (pairs `x ↦ y`) under `x+x′ ↦ y+y′` and
/// `x̄ ↦ ȳ`. Every pair of reached elements is combined, so a `Unique`
/// result is additive and preserves conjugation on the whole domain.
pub fn extend_from_forced(
    domain: &ConjStructure,
    target: &ConjStructure,
    prescribed: &[(Elem, Elem)],
    bound: usize,
) -> Result<Extension, ExtendError> {
    let els = domain.elements().ok_or_else(|| ExtendError::InfiniteDomain(domain.name().to_string()))?;
    if els.len() > bound {
        return Err(ExtendError::TooLarge { name: domain.name().to_string(), size: els.len(), bound });
    }
    let mut value: HashMap<Elem, Elem> = HashMap::new();
    let mut order: Vec<Elem> = Vec::new();
    let assign = |x: Elem, y: Elem, value: &mut HashMap<Elem, Elem>, order: &mut Vec<Elem>| match value.get(&x) {
        Some(old) if *old != y => Err(Extension::Conflict { at: x, first: old.clone(), second: y }),
        Some(_) => Ok(()),
        None => {
            value.insert(x.clone(), y);
            order.push(x);
            Ok(())
        }
    };
    for (x, y) in prescribed {
        if !domain.contains(x) {
            return Err(ExtendError::NotInDomain(x.clone()));
        }
        if let Err(c) = assign(x.clone(), y.clone(), &mut value, &mut order) {
            return Ok(c);
        }
    }
    let mut i = 0;
    while i < order.len() {
        let u = order[i].clone();
        let vu = value[&u].clone();
        if let Err(c) = assign(domain.conj(&u), target.conj(&vu), &mut value, &mut order) {
            return Ok(c);
        }
        for j in 0..=i {
            let w = order[j].clone();
            let vw = value[&w].clone();
            if let Err(c) = assign(domain.op(&u, &w), target.op(&vu, &vw), &mut value, &mut order) {
                return Ok(c);
            }
            if let Err(c) = assign(domain.op(&w, &u), target.op(&vw, &vu), &mut value, &mut order) {
                return Ok(c);
            }
        }
        i += 1;
    }
    if let Some(missing) = els.iter().find(|x| !value.contains_key(*x)) {
        return Ok(Extension::NotGenerated { generated: value.len(), missing: missing.clone() });
    }
    Ok(Extension::Unique(els.iter().map(|x| value[x].clone()).collect()))
}

/// A generating set of a finite structure, chosen greedily in element order
/// and closed under the operation and conjugation.
pub fn generators(s: &ConjStructure) -> Option<Vec<Elem>> {
    let els = s.elements()?;
    let mut reached: std::collections::HashSet<Elem> = std::collections::HashSet::new();
    let mut gens = Vec::new();
    if let Some(z) = s.identity() {
        reached.insert(z);
    }
    for x in els.iter() {
        if reached.contains(x) {
            continue;
        }
        gens.push(x.clone());
        let mut frontier: Vec<Elem> = reached.iter().cloned().chain([x.clone()]).collect();
        reached.insert(x.clone());
        while let Some(u) = frontier.pop() {
            let mut next = vec![s.conj(&u)];
            for w in reached.iter() {
                next.push(s.op(&u, w));
                next.push(s.op(w, &u));
            }
            for n in next {
                if reached.insert(n.clone()) {
                    frontier.push(n);
                }
            }
        }
    }
    Some(gens)
}

/// Every homomorphism between two finite structures, found by extending
/// each assignment of images to [`generators`] of the source.
pub fn all_homs(source: &ConjStructure, target: &ConjStructure, name: &str) -> Option<Vec<Hom>> {
    let gens = generators(source)?;
    let images = target.elements()?;
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let mut prescribed: Vec<(Elem, Elem)> =
            gens.iter().zip(&choice).map(|(g, &c)| (g.clone(), images[c].clone())).collect();
        if let (Some(z), Some(zt)) = (source.identity(), target.identity()) {
            prescribed.push((z, zt));
        }
        if let Ok(Extension::Unique(table)) = extend_from_forced(source, target, &prescribed, usize::MAX) {
            let n = out.len();
            out.push(Hom::from_table(format!("{name}{n}"), source, target, table).expect("sized table"));
        }
        // Next assignment in odometer order.
        let mut pos = 0;
        loop {
            if pos == choice.len() {
                return Some(out);
            }
            choice[pos] += 1;
            if choice[pos] < images.len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}
