//! Block expansion over the hull, determinization, and disambiguation.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use crate::error::TransformError;
use crate::hull::{linear_hull, HullCertificate, HullConfig};
use crate::matrix::{dot, Matrix};
use crate::minimize::{good_basis, minimal_rep};
use crate::rep::LinearRep;
use crate::subspace::Subspace;
use crate::wfa::Wfa;

/// The coordinate blocks of an expanded representation, one per hull component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockStructure {
    pub ranges: Vec<Range<usize>>,
    /// The component behind each block; its echelon basis gives the block coordinates.
    pub components: Vec<Subspace>,
}

impl BlockStructure {
    pub fn block_of(&self, coord: usize) -> usize {
        self.ranges.iter().position(|r| r.contains(&coord)).expect("coordinate inside some block")
    }

    /// Blocks for a partition given by sizes.
    pub fn from_sizes(sizes: &[usize]) -> BlockStructure {
        let mut ranges = Vec::new();
        let mut at = 0;
        for &s in sizes {
            ranges.push(at..at + s);
            at += s;
        }
        BlockStructure { ranges, components: Vec::new() }
    }
}

/// The first failed cover condition. Blocks and columns are numbered from 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverViolation {
    pub condition: u8,
    pub block: Option<usize>,
    pub letter: Option<char>,
    pub column: Option<usize>,
}

impl fmt::Display for CoverViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cover-violation cond={}", self.condition)?;
        if let Some(b) = self.block {
            write!(f, " block={}", b)?;
        }
        if let Some(x) = self.letter {
            write!(f, " letter={}", x)?;
        }
        if let Some(c) = self.column {
            write!(f, " column={}", c)?;
        }
        Ok(())
    }
}

/// Direct sum over the hull components `V_1, …, V_k`, with `u ∈ V_1`.
///
/// Block `i` uses the echelon basis `f_{i,1}, …` of `V_i`. Row `(i, s)` of `μ'(x)` holds
/// the coordinates of `f_{i,s} · μ(x)` in block `f(i, x)`, and `v'_{(i,s)} = f_{i,s} · v`.
pub fn expand_rep(rep: &LinearRep, cert: &HullCertificate) -> Result<(LinearRep, BlockStructure), TransformError> {
    if !cert.verify(rep) {
        return Err(TransformError::CertificateInvalid);
    }
    let f = rep.field();
    let comps = cert.hull.components();
    if rep.dim() == 0 || comps.is_empty() {
        return Ok((LinearRep::zero(rep.alphabet().clone(), f), BlockStructure { ranges: Vec::new(), components: Vec::new() }));
    }
    let first = comps.iter().position(|c| c.contains_vector(rep.u())).ok_or(TransformError::UInNoComponent)?;
    let order: Vec<usize> = core::iter::once(first).chain((0..comps.len()).filter(|&i| i != first)).collect();
    let mut pos = vec![0; comps.len()];
    for (new, &old) in order.iter().enumerate() {
        pos[old] = new;
    }
    let blocks: Vec<&Subspace> = order.iter().map(|&i| &comps[i]).collect();
    let sizes: Vec<usize> = blocks.iter().map(|b| b.dim()).collect();
    let mut structure = BlockStructure::from_sizes(&sizes);
    structure.components = blocks.iter().map(|b| (*b).clone()).collect();
    let m: usize = sizes.iter().sum();

    let mut u = vec![f.zero(); m];
    let cu = blocks[0].coordinates(rep.u()).ok_or(TransformError::UInNoComponent)?;
    for (t, c) in cu.into_iter().enumerate() {
        u[structure.ranges[0].start + t] = c;
    }

    let mut mu = Vec::with_capacity(rep.alphabet().len());
    for x in 0..rep.alphabet().len() {
        let mut mx = Matrix::zeros(f, m, m);
        for (i, b) in blocks.iter().enumerate() {
            let j = pos[cert.targets[order[i]][x]];
            for (s, row) in b.basis().iter().enumerate() {
                let img = rep.mu(x).left_apply(row);
                let c = blocks[j].coordinates(&img).ok_or(TransformError::CertificateInvalid)?;
                for (t, ct) in c.into_iter().enumerate() {
                    mx.set(structure.ranges[i].start + s, structure.ranges[j].start + t, ct);
                }
            }
        }
        mu.push(mx);
    }

    let mut v = Vec::with_capacity(m);
    for b in &blocks {
        for row in b.basis() {
            v.push(dot(row, rep.v(), f));
        }
    }
    let out = LinearRep::new(rep.alphabet().clone(), f, u, mu, v).expect("consistent shapes");
    Ok((out, structure))
}

/// A deterministic automaton for the series, or the hull as evidence that none exists.
pub fn determinize(rep: &LinearRep, config: &HullConfig) -> Result<Wfa, TransformError> {
    let (min, _) = minimal_rep(rep);
    let (hull, cert) = linear_hull(&min, config)?;
    if hull.dimension().unwrap_or(0) >= 2 {
        return Err(TransformError::HullDimensionExceeded(hull));
    }
    let (expanded, _) = expand_rep(&min, &cert)?;
    let w = Wfa::from_rep(&expanded).trim();
    if !w.is_deterministic() {
        return Err(TransformError::Internal("expansion over lines is not deterministic"));
    }
    Ok(w)
}

/// Checks the four block conditions that make the associated automaton unambiguous:
/// `u` meets one block; each block maps into one block per letter; within a block,
/// each column of `μ(x)` has at most one nonzero; each block meets `v` at most once.
pub fn check_cover_conditions(rep: &LinearRep, blocks: &BlockStructure) -> Result<(), CoverViolation> {
    let letters = rep.alphabet().letters();
    let violation = |condition, block: Option<usize>, letter: Option<char>, column: Option<usize>| CoverViolation {
        condition,
        block: block.map(|b| b + 1),
        letter,
        column: column.map(|c| c + 1),
    };
    let touched = |it: &mut dyn Iterator<Item = usize>| {
        let mut bs: Vec<usize> = it.map(|c| blocks.block_of(c)).collect();
        bs.sort_unstable();
        bs.dedup();
        bs.len()
    };
    let n = rep.dim();
    if touched(&mut (0..n).filter(|&c| !rep.u()[c].is_zero())) > 1 {
        return Err(violation(1, None, None, None));
    }
    for (i, r) in blocks.ranges.iter().enumerate() {
        for (x, &l) in letters.iter().enumerate() {
            let m = rep.mu(x);
            let mut cols = r.clone().flat_map(|row| (0..n).filter(move |&c| !m.get(row, c).is_zero()));
            if touched(&mut cols) > 1 {
                return Err(violation(2, Some(i), Some(l), None));
            }
        }
    }
    for (i, r) in blocks.ranges.iter().enumerate() {
        for (x, &l) in letters.iter().enumerate() {
            let m = rep.mu(x);
            for c in 0..n {
                if r.clone().filter(|&row| !m.get(row, c).is_zero()).count() > 1 {
                    return Err(violation(3, Some(i), Some(l), Some(c)));
                }
            }
        }
    }
    for (i, r) in blocks.ranges.iter().enumerate() {
        if r.clone().filter(|&row| !rep.v()[row].is_zero()).count() > 1 {
            return Err(violation(4, Some(i), None, None));
        }
    }
    Ok(())
}

/// An unambiguous automaton for the series, built over the hull in the good basis.
///
/// Fails with the first cover violation when the construction does not apply, which for
/// series over `Q` means the series is not Pólya.
pub fn disambiguate(rep: &LinearRep, config: &HullConfig) -> Result<Wfa, TransformError> {
    let (min, _) = minimal_rep(rep);
    if min.dim() == 0 {
        return Ok(Wfa::from_rep(&min));
    }
    let g = good_basis(&min)?;
    let (_, cert) = linear_hull(&g, config)?;
    let (expanded, blocks) = expand_rep(&g, &cert)?;
    check_cover_conditions(&expanded, &blocks).map_err(TransformError::CoverConditionViolated)?;
    let w = Wfa::from_rep(&expanded);
    if !w.is_unambiguous() {
        return Err(TransformError::Internal("cover conditions hold but the automaton is ambiguous"));
    }
    Ok(w.trim())
}
