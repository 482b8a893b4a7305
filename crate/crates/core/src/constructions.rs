//! Explicit presentations of fiber products over the residue field, amalgamated
//! duplications and Nagata idealizations.

use crate::error::{HkError, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::module::ModulePresentation;
use crate::poly::Polynomial;
use crate::ring::{check_local_generators, RingPresentation};
use crate::syzygy::syzygy_basis;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConstructionKind {
    FiberProductK,
    MultiFiberK,
    Duplication,
    Idealization,
}

impl ConstructionKind {
    pub fn name(self) -> &'static str {
        match self {
            ConstructionKind::FiberProductK => "fiber-product-k",
            ConstructionKind::MultiFiberK => "multi-fiber-k",
            ConstructionKind::Duplication => "duplication",
            ConstructionKind::Idealization => "idealization",
        }
    }
}

/// Where a variable of a constructed ring comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VariableSource {
    /// Variable `original` of component `component` (0-based).
    Component { component: usize, original: String },
    /// `y_s` standing for the ideal generator `f_s` of a duplication.
    IdealGenerator(usize),
    /// `y_i` standing for the module generator `e_i` of an idealization.
    ModuleGenerator(usize),
}

#[derive(Clone, Debug)]
pub struct ConstructionReport {
    pub result: RingPresentation,
    pub kind: ConstructionKind,
    /// Krull dimensions of the inputs. For duplications: `[dim R, dim R/I]`.
    pub component_dims: Vec<usize>,
    /// One entry per variable of `result`, in order.
    pub provenance: Vec<(String, VariableSource)>,
    /// Set when the construction degenerated (duplication along the zero ideal).
    pub degenerate: bool,
}

impl ConstructionReport {
    pub fn module_variables(&self) -> Vec<usize> {
        self.provenance
            .iter()
            .enumerate()
            .filter(|(_, (_, s))| matches!(s, VariableSource::ModuleGenerator(_)))
            .map(|(i, _)| i)
            .collect()
    }

    /// Indices of the variables coming from component `c`.
    pub fn component_variables(&self, c: usize) -> Vec<usize> {
        self.provenance
            .iter()
            .enumerate()
            .filter(|(_, (_, s))| matches!(s, VariableSource::Component { component, .. } if *component == c))
            .map(|(i, _)| i)
            .collect()
    }
}

fn fresh_name(base: &str, taken: &[String]) -> String {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('_');
    }
    name
}

fn glue(components: &[&RingPresentation], kind: ConstructionKind) -> Result<ConstructionReport> {
    if components.len() < 2 {
        return Err(HkError::Invalid("a fiber product needs at least two components".into()));
    }
    let field = components[0].field();
    for c in components {
        if c.field() != field {
            return Err(HkError::CharMismatch(field.characteristic(), c.characteristic()));
        }
        c.check_local()?;
    }
    let all: Vec<&String> = components.iter().flat_map(|c| c.names()).collect();
    let clash = all.iter().enumerate().any(|(i, n)| all[..i].contains(n));
    let mut names = Vec::new();
    let mut provenance = Vec::new();
    for (ci, c) in components.iter().enumerate() {
        for v in c.names() {
            let name = if clash { format!("{v}_{}", ci + 1) } else { v.clone() };
            provenance.push((
                name.clone(),
                VariableSource::Component {
                    component: ci,
                    original: v.clone(),
                },
            ));
            names.push(name);
        }
    }
    if names.iter().enumerate().any(|(i, n)| names[..i].contains(n)) {
        return Err(HkError::Invalid("could not disjointify variable names".into()));
    }
    let nvars = names.len();
    let order = MonomialOrder::grevlex();
    let mut offsets = Vec::with_capacity(components.len());
    let mut gens = Vec::new();
    let mut offset = 0;
    for c in components {
        offsets.push(offset);
        gens.extend(c.generators().iter().map(|g| g.embed(nvars, offset, &order)));
        offset += c.nvars();
    }
    // x_i y_j for variables of distinct components
    for a in 0..components.len() {
        for b in a + 1..components.len() {
            for i in 0..components[a].nvars() {
                for j in 0..components[b].nvars() {
                    let mut e = vec![0u16; nvars];
                    e[offsets[a] + i] = 1;
                    e[offsets[b] + j] = 1;
                    gens.push(Polynomial::from_terms(
                        field,
                        nvars,
                        order.clone(),
                        vec![(Monomial::from_slice(&e), 1)],
                    ));
                }
            }
        }
    }
    let component_dims = components.iter().map(|c| c.dimension()).collect::<Result<_>>()?;
    Ok(ConstructionReport {
        result: RingPresentation::with_order(field, names, gens, order)?,
        kind,
        component_dims,
        provenance,
        degenerate: false,
    })
}

/// `R x_k S = k[x, y] / (I + J + (x_i y_j))`.
pub fn fiber_product_over_k(r: &RingPresentation, s: &RingPresentation) -> Result<ConstructionReport> {
    glue(&[r, s], ConstructionKind::FiberProductK)
}

/// Fiber product of `r >= 2` components over the residue field: all component
/// ideals plus every product of variables from distinct components.
pub fn multi_fiber_product_over_k(components: &[RingPresentation]) -> Result<ConstructionReport> {
    let refs: Vec<&RingPresentation> = components.iter().collect();
    glue(&refs, ConstructionKind::MultiFiberK)
}

/// Appends `n` fresh variables `y1..yn` to `ring`, returning the new names,
/// the embedded generators and the provenance of the old variables.
fn extend_ring(ring: &RingPresentation, n: usize) -> (Vec<String>, Vec<Polynomial>) {
    let mut names = ring.names().to_vec();
    for s in 0..n {
        let name = fresh_name(&format!("y{}", s + 1), &names);
        names.push(name);
    }
    let nvars = names.len();
    let gens = ring
        .generators()
        .iter()
        .map(|g| g.embed(nvars, 0, ring.order()))
        .collect();
    (names, gens)
}

fn base_provenance(ring: &RingPresentation) -> Vec<(String, VariableSource)> {
    ring.names()
        .iter()
        .map(|v| {
            (
                v.clone(),
                VariableSource::Component {
                    component: 0,
                    original: v.clone(),
                },
            )
        })
        .collect()
}

fn new_var(ring: &RingPresentation, nvars: usize, i: usize) -> Polynomial {
    Polynomial::var(ring.field(), nvars, ring.order().clone(), i)
}

/// `R ⋈ I` presented as `R[y_1..y_n] / (sum a_s y_s for syzygies a of f over R,
/// y_s y_t - f_s y_t)`, realizing `R ⊕ I` with `(r, i)(s, j) = (rs, rj + si + ij)`.
pub fn amalgamated_duplication(ring: &RingPresentation, ideal_gens: &[Polynomial]) -> Result<ConstructionReport> {
    ring.check_local()?;
    let mut f = Vec::new();
    for g in ideal_gens {
        if g.field() != ring.field() {
            return Err(HkError::CharMismatch(ring.characteristic(), g.field().characteristic()));
        }
        if g.nvars() != ring.nvars() {
            return Err(HkError::ArityMismatch(ring.nvars(), g.nvars()));
        }
        let r = ring.normal_form(&g.with_order(ring.order()))?;
        if !r.is_zero() {
            f.push(r);
        }
    }
    let dim_r = ring.dimension()?;
    if f.is_empty() {
        return Ok(ConstructionReport {
            result: ring.clone(),
            kind: ConstructionKind::Duplication,
            component_dims: vec![dim_r, dim_r],
            provenance: base_provenance(ring),
            degenerate: true,
        });
    }
    let quotient = ring.quotient_by(&f)?;
    if quotient.groebner()?.is_unit_ideal() {
        return Err(HkError::UnitIdeal);
    }
    let dim_q = quotient.dimension()?;

    let n = f.len();
    // syzygies over R: syzygies of (f, defining ideal) cut down to the f part
    let mut all = f.clone();
    all.extend(ring.groebner()?.elements().iter().cloned());
    let syz = syzygy_basis(&all)?;

    let (names, mut gens) = extend_ring(ring, n);
    let nvars = names.len();
    let order = ring.order().clone();
    let y = |s: usize| new_var(ring, nvars, ring.nvars() + s);
    let lift = |p: &Polynomial| p.embed(nvars, 0, &order);
    for row in &syz.rows {
        let mut rel = Polynomial::zero(ring.field(), nvars, order.clone());
        for s in 0..n {
            if !row[s].is_zero() {
                rel = rel.add(&lift(&ring.normal_form(&row[s])?).mul(&y(s))?)?;
            }
        }
        if !rel.is_zero() && !gens.contains(&rel) {
            gens.push(rel);
        }
    }
    for s in 0..n {
        for t in 0..n {
            let rel = y(s).mul(&y(t))?.sub(&lift(&f[s]).mul(&y(t))?)?;
            gens.push(rel);
        }
    }
    let mut provenance = base_provenance(ring);
    for s in 0..n {
        provenance.push((names[ring.nvars() + s].clone(), VariableSource::IdealGenerator(s)));
    }
    Ok(ConstructionReport {
        result: RingPresentation::with_order(ring.field(), names, gens, order)?,
        kind: ConstructionKind::Duplication,
        component_dims: vec![dim_r, dim_q],
        provenance,
        degenerate: false,
    })
}

/// `R ⋉ M` presented as `R[y_1..y_n] / (y_i y_j, sum_i A[i][s] y_i)`.
pub fn idealization(ring: &RingPresentation, module: &ModulePresentation) -> Result<ConstructionReport> {
    if module.ring().as_ref() != ring {
        return Err(HkError::Invalid("module is defined over a different ring".into()));
    }
    let n = module.generator_count();
    let (names, mut gens) = extend_ring(ring, n);
    let nvars = names.len();
    let order = ring.order().clone();
    let y = |s: usize| new_var(ring, nvars, ring.nvars() + s);
    for i in 0..n {
        for j in i..n {
            gens.push(y(i).mul(&y(j))?);
        }
    }
    for s in 0..module.relation_count() {
        let mut rel = Polynomial::zero(ring.field(), nvars, order.clone());
        for i in 0..n {
            let a = module.entry(i, s);
            if !a.is_zero() {
                rel = rel.add(&a.embed(nvars, 0, &order).mul(&y(i))?)?;
            }
        }
        if !rel.is_zero() {
            gens.push(rel);
        }
    }
    let mut provenance = base_provenance(ring);
    for i in 0..n {
        provenance.push((names[ring.nvars() + i].clone(), VariableSource::ModuleGenerator(i)));
    }
    Ok(ConstructionReport {
        result: RingPresentation::with_order(ring.field(), names, gens, order)?,
        kind: ConstructionKind::Idealization,
        component_dims: vec![ring.dimension()?],
        provenance,
        degenerate: false,
    })
}

/// Rejects ideal generators with unit terms.
pub fn check_local_ideal(ring: &RingPresentation, gens: &[Polynomial]) -> Result<()> {
    check_local_generators(gens, ring.names())
}
