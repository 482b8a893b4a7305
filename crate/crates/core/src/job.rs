//! Jobs: what the command line asks for, and how it is executed.

use std::sync::Arc;
use std::time::Duration;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::constructions::{
    amalgamated_duplication, fiber_product_over_k, idealization, multi_fiber_product_over_k, ConstructionReport,
    VariableSource,
};
use crate::error::{HkError, Result, WithContext};
use crate::formulas::{
    aberbach_enescu_bound, default_tolerance, duplication_formula, fiber_bound, fiber_formula_normalized,
    idealization_bound, idealization_formula, idealization_rank_bound, multi_fiber_formula, verify, veronese_hk,
    wy_check, FiberCase,
};
use crate::hk::{hk_estimate, hk_function_timed, hk_module_function_timed, EstimateMethod, HkEstimate};
use crate::module::ModulePresentation;
use crate::monomial::{MonomialOrder, OrderKind};
use crate::poly::Polynomial;
use crate::report::{Provenance, Report, SampleTable};
use crate::ring::RingPresentation;
use crate::series::zigzag_m;
use crate::spec::{parse_spec, ring_to_spec, Declarations};
use crate::staircase;
use crate::Rational;

/// The ideal `J` a Hilbert–Kunz function is taken with respect to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealRef {
    /// The irrelevant maximal ideal, generated by all variables.
    Maximal,
    Named(String),
}

impl IdealRef {
    pub fn parse(s: &str) -> Self {
        if s == "m" {
            IdealRef::Maximal
        } else {
            IdealRef::Named(s.to_string())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    Fiber(String, String),
    MultiFiber(Vec<String>),
    Duplication { ring: String, ideal: String },
    Idealization { ring: String, module: String },
}

impl Construction {
    /// `fiber R S`, `multifiber R S T ...`, `dup R I` or `ideal R M`.
    pub fn parse(kind: &str, names: &[String]) -> Result<Self> {
        let want = |n: usize| {
            if names.len() == n {
                Ok(())
            } else {
                Err(HkError::Invalid(format!("`{kind}` takes {n} names, got {}", names.len())))
            }
        };
        Ok(match kind {
            "fiber" => {
                want(2)?;
                Construction::Fiber(names[0].clone(), names[1].clone())
            }
            "multifiber" => {
                if names.len() < 2 {
                    return Err(HkError::Invalid("`multifiber` takes at least 2 rings".into()));
                }
                Construction::MultiFiber(names.to_vec())
            }
            "dup" => {
                want(2)?;
                Construction::Duplication {
                    ring: names[0].clone(),
                    ideal: names[1].clone(),
                }
            }
            "ideal" => {
                want(2)?;
                Construction::Idealization {
                    ring: names[0].clone(),
                    module: names[1].clone(),
                }
            }
            other => {
                return Err(HkError::Invalid(format!(
                    "unknown construction `{other}` (expected fiber, multifiber, dup or ideal)"
                )))
            }
        })
    }

    fn label(&self) -> String {
        match self {
            Construction::Fiber(r, s) => format!("{r} x_k {s}"),
            Construction::MultiFiber(rs) => rs.join(" x_k "),
            Construction::Duplication { ring, ideal } => format!("{ring} dup {ideal}"),
            Construction::Idealization { ring, module } => format!("{ring} ltimes {module}"),
        }
    }
}

/// What a `verify` job compares against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Construction(Construction),
    Value {
        value: Rational,
        ring: String,
        module: Option<String>,
        ideal: IdealRef,
    },
}

impl Target {
    /// `--against fiber|multifiber|dup|ideal|value:Q` with positional names.
    pub fn parse(against: &str, names: &[String], module: Option<String>, ideal: IdealRef) -> Result<Self> {
        if let Some(q) = against.strip_prefix("value:") {
            let value = parse_rational(q)?;
            if names.len() != 1 {
                return Err(HkError::Invalid("`value:Q` takes exactly one ring name".into()));
            }
            return Ok(Target::Value {
                value,
                ring: names[0].clone(),
                module,
                ideal,
            });
        }
        Ok(Target::Construction(Construction::parse(against, names)?))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    Fiber(FiberCase),
    AberbachEnescu,
    /// `1 + m_d`.
    Series,
    /// Idealization with the given number of modules in the sum.
    Idealization(usize),
    /// Idealization by a module of the given rank.
    IdealizationRank(usize),
    /// Veronese subring of the given order.
    Veronese(usize),
}

impl BoundKind {
    pub fn parse(case: &str, count: Option<usize>) -> Result<Self> {
        if let Some(c) = FiberCase::parse(case) {
            return Ok(BoundKind::Fiber(c));
        }
        let need = || count.ok_or_else(|| HkError::Invalid(format!("`--case {case}` needs --count")));
        Ok(match case {
            "aberbach-enescu" => BoundKind::AberbachEnescu,
            "wy" => BoundKind::Series,
            "idealization" => BoundKind::Idealization(need()?),
            "idealization-rank" => BoundKind::IdealizationRank(need()?),
            "veronese" => BoundKind::Veronese(need()?),
            other => return Err(HkError::Invalid(format!("unknown bound case `{other}`"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Gb {
        ring: String,
    },
    Hk {
        ring: String,
        module: Option<String>,
        ideal: IdealRef,
    },
    Construct(Construction),
    Verify(Target),
    /// Runs `inner` once per value of `param` in `lo..=hi`, with `{param}` in
    /// the job source replaced by the value.
    Sweep {
        param: String,
        lo: i64,
        hi: i64,
        inner: Box<Command>,
    },
    Bounds {
        kind: BoundKind,
        d: usize,
    },
    Wy {
        ring: String,
        d: Option<usize>,
        quadric: Option<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Gb { .. } => "gb",
            Command::Hk { .. } => "hk",
            Command::Construct(_) => "construct",
            Command::Verify(_) => "verify",
            Command::Sweep { .. } => "sweep",
            Command::Bounds { .. } => "bounds",
            Command::Wy { .. } => "wy",
        }
    }
}

/// Parses `n=LO..HI` (inclusive).
pub fn parse_param_range(s: &str) -> Result<(String, i64, i64)> {
    let bad = || HkError::Invalid(format!("expected NAME=LO..HI, got `{s}`"));
    let (name, range) = s.split_once('=').ok_or_else(bad)?;
    let (lo, hi) = range.split_once("..").ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    let name = name.trim();
    if name.is_empty() || lo > hi {
        return Err(bad());
    }
    Ok((name.to_string(), lo, hi))
}

/// Parses `a`, `-a` or `a/b`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    s.parse::<Rational>()
        .map_err(|_| HkError::Invalid(format!("`{s}` is not a rational number")))
}

#[derive(Clone, Debug)]
pub struct JobSpec {
    /// Declarations (or, for sweeps, the template) the command refers to.
    pub source: String,
    pub command: Command,
    pub e_max: Option<u32>,
    pub method: EstimateMethod,
    pub tolerance: Rational,
    pub order: OrderKind,
    pub threads: Option<usize>,
    pub timings: bool,
}

impl JobSpec {
    pub fn new(source: impl Into<String>, command: Command) -> Self {
        JobSpec {
            source: source.into(),
            command,
            e_max: None,
            method: EstimateMethod::TwoPointFit,
            tolerance: default_tolerance(),
            order: OrderKind::GrevLex,
            threads: None,
            timings: false,
        }
    }

    /// The requested `e_max`, or the largest `e` with `p^e <= 27`
    /// (at least 2, so that a two-point fit is possible).
    pub fn e_max_for(&self, p: u32) -> u32 {
        if let Some(e) = self.e_max {
            return e;
        }
        let mut e = 0;
        let mut q = 1u64;
        while q * p as u64 <= 27 {
            q *= p as u64;
            e += 1;
        }
        e.max(2)
    }
}

/// Pool size from `requested`, else `HKLAB_THREADS`, else the core count.
pub fn thread_count(requested: Option<usize>) -> usize {
    requested
        .or_else(|| std::env::var("HKLAB_THREADS").ok().and_then(|v| v.parse().ok()))
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

/// Runs a job on a dedicated pool. Nothing is returned on failure, so no
/// partial tables escape.
pub fn run(job: &JobSpec) -> Result<Report> {
    if job.e_max == Some(0) {
        return Err(HkError::Invalid("e_max must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_count(job.threads))
        .build()
        .map_err(|e| HkError::Invalid(format!("cannot start worker pool: {e}")))?;
    pool.install(|| execute(job))
}

#[derive(Default)]
struct Section {
    tables: Vec<SampleTable>,
    verdicts: Vec<(String, crate::formulas::FormulaVerdict)>,
    values: Vec<(String, Rational)>,
    notes: Vec<String>,
    e_max: Option<u32>,
}

impl Section {
    fn prefixed(mut self, prefix: &str) -> Self {
        for t in &mut self.tables {
            t.label = format!("{prefix} {}", t.label);
        }
        for (l, _) in &mut self.verdicts {
            *l = format!("{prefix} {l}");
        }
        for (l, _) in &mut self.values {
            *l = format!("{prefix} {l}");
        }
        for n in &mut self.notes {
            *n = format!("{prefix} {n}");
        }
        self
    }

    fn append(&mut self, other: Section) {
        self.tables.extend(other.tables);
        self.verdicts.extend(other.verdicts);
        self.values.extend(other.values);
        self.notes.extend(other.notes);
        self.e_max = self.e_max.or(other.e_max);
    }
}

fn execute(job: &JobSpec) -> Result<Report> {
    let section = match &job.command {
        Command::Sweep { param, lo, hi, inner } => {
            if matches!(**inner, Command::Sweep { .. }) {
                return Err(HkError::Invalid("sweeps do not nest".into()));
            }
            let key = format!("{{{param}}}");
            if !job.source.contains(&key) {
                return Err(HkError::Invalid(format!("template does not mention `{key}`")));
            }
            let parts: Vec<Section> = (*lo..=*hi)
                .into_par_iter()
                .map(|v| {
                    let text = job.source.replace(&key, &v.to_string());
                    let label = format!("{param}={v}");
                    let decls = parse_spec(&text).context(|| label.clone())?;
                    let section = Runner { job, decls: &decls }.command(inner).context(|| label.clone())?;
                    Ok(section.prefixed(&label))
                })
                .collect::<Result<_>>()?;
            let mut all = Section::default();
            for p in parts {
                all.append(p);
            }
            all
        }
        Command::Bounds { .. } => Runner {
            job,
            decls: &Declarations::default(),
        }
        .command(&job.command)?,
        cmd => {
            let decls = parse_spec(&job.source)?;
            Runner { job, decls: &decls }.command(cmd)?
        }
    };
    let order = match (&job.command, job.order) {
        (Command::Gb { .. } | Command::Hk { module: None, .. }, OrderKind::Lex) => "lex",
        _ => "grevlex",
    };
    let mut report = Report::new(Provenance {
        command: job.command.name().to_string(),
        input_hash: sha256_hex(&job.source),
        order: order.to_string(),
        e_max: section.e_max,
        method: job.method.name().to_string(),
    });
    report.tables = section.tables;
    report.verdicts = section.verdicts;
    report.values = section.values;
    report.notes = section.notes;
    Ok(report)
}

struct Runner<'a> {
    job: &'a JobSpec,
    decls: &'a Declarations,
}

impl Runner<'_> {
    fn command(&self, cmd: &Command) -> Result<Section> {
        match cmd {
            Command::Gb { ring } => self.gb(ring),
            Command::Hk { ring, module, ideal } => self.hk(ring, module.as_deref(), ideal),
            Command::Construct(c) => self.construct(c),
            Command::Verify(t) => self.verify(t),
            Command::Bounds { kind, d } => bounds(*kind, *d),
            Command::Wy { ring, d, quadric } => self.wy(ring, *d, quadric.as_deref()),
            Command::Sweep { .. } => Err(HkError::Invalid("sweeps do not nest".into())),
        }
    }

    fn ring(&self, name: &str) -> Result<Arc<RingPresentation>> {
        self.decls.ring(name).cloned()
    }

    fn ordered(&self, ring: &RingPresentation) -> Result<RingPresentation> {
        let order = match self.job.order {
            OrderKind::Lex => MonomialOrder::lex(),
            OrderKind::GrevLex => MonomialOrder::grevlex(),
        };
        RingPresentation::with_order(ring.field(), ring.names().to_vec(), ring.generators().to_vec(), order)
    }

    fn ideal_gens(&self, ring_name: &str, ring: &RingPresentation, ideal: &IdealRef) -> Result<Vec<Polynomial>> {
        match ideal {
            IdealRef::Maximal => Ok(ring.variables()),
            IdealRef::Named(name) => {
                let decl = self.decls.ideal(name)?;
                if decl.ring != ring_name {
                    return Err(HkError::Invalid(format!(
                        "ideal `{name}` lives in `{}`, not `{ring_name}`",
                        decl.ring
                    )));
                }
                Ok(decl.generators.iter().map(|g| g.with_order(ring.order())).collect())
            }
        }
    }

    fn table(&self, label: &str, timed: Vec<(crate::hk::HkSample, Duration)>) -> Result<SampleTable> {
        let (samples, times): (Vec<_>, Vec<_>) = timed.into_iter().unzip();
        let estimate = hk_estimate(&samples, self.job.method).context(|| format!("estimating {label}"))?;
        Ok(SampleTable {
            label: label.to_string(),
            dimension: samples.first().map_or(0, |s| s.dimension),
            samples,
            estimate: Some(estimate),
            timings: self.job.timings.then_some(times),
        })
    }

    fn ring_table(&self, label: &str, ring: &RingPresentation, j: &[Polynomial]) -> Result<(SampleTable, u32)> {
        let e_max = self.job.e_max_for(ring.characteristic());
        let timed = hk_function_timed(ring, j, e_max).context(|| format!("computing samples of {label}"))?;
        Ok((self.table(label, timed)?, e_max))
    }

    fn module_table(&self, label: &str, module: &ModulePresentation, j: &[Polynomial]) -> Result<(SampleTable, u32)> {
        let e_max = self.job.e_max_for(module.ring().characteristic());
        let timed = hk_module_function_timed(module, j, e_max).context(|| format!("computing samples of {label}"))?;
        Ok((self.table(label, timed)?, e_max))
    }

    fn estimate_of(table: &SampleTable) -> HkEstimate {
        table.estimate.clone().expect("tables built here always carry estimates")
    }

    fn gb(&self, name: &str) -> Result<Section> {
        let ring = self.ordered(&*self.ring(name)?)?;
        let gb = ring.groebner().context(|| format!("Gröbner basis of {name}"))?;
        let mut notes = vec![format!(
            "ring {name}: reduced Gröbner basis ({}) with {} elements",
            ring.order().name(),
            gb.elements().len()
        )];
        for g in gb.elements() {
            notes.push(format!("  {}", ring.fmt_poly(g)));
        }
        if gb.is_unit_ideal() {
            notes.push("unit ideal".into());
            return Ok(Section {
                notes,
                ..Section::default()
            });
        }
        let leads: Vec<String> = gb
            .lead_monomials()
            .iter()
            .map(|m| m.fmt_with(ring.names()))
            .collect();
        notes.push(format!("lead monomials: {}", leads.join(", ")));
        notes.push(format!("dimension: {}", ring.dimension()?));
        if staircase::is_artinian(gb, ring.nvars()) {
            let len = staircase::standard_monomial_count(gb.lead_monomials(), ring.nvars())?;
            notes.push(format!("standard monomials: {len}"));
        }
        Ok(Section {
            notes,
            ..Section::default()
        })
    }

    fn hk(&self, name: &str, module: Option<&str>, ideal: &IdealRef) -> Result<Section> {
        let declared = self.ring(name)?;
        let (table, e_max) = match module {
            None => {
                let ring = self.ordered(&declared)?;
                let j = self.ideal_gens(name, &ring, ideal)?;
                self.ring_table(name, &ring, &j)?
            }
            Some(mname) => {
                let decl = self.decls.module(mname)?;
                if decl.ring != name {
                    return Err(HkError::Invalid(format!(
                        "module `{mname}` lives over `{}`, not `{name}`",
                        decl.ring
                    )));
                }
                let j = self.ideal_gens(name, &declared, ideal)?;
                self.module_table(mname, &decl.module, &j)?
            }
        };
        Ok(Section {
            tables: vec![table],
            e_max: Some(e_max),
            ..Section::default()
        })
    }

    fn build(&self, c: &Construction) -> Result<ConstructionReport> {
        let what = || format!("constructing {}", c.label());
        match c {
            Construction::Fiber(r, s) => fiber_product_over_k(&*self.ring(r)?, &*self.ring(s)?).context(what),
            Construction::MultiFiber(rs) => {
                let rings: Vec<RingPresentation> = rs
                    .iter()
                    .map(|r| self.ring(r).map(|a| (*a).clone()))
                    .collect::<Result<_>>()?;
                multi_fiber_product_over_k(&rings).context(what)
            }
            Construction::Duplication { ring, ideal } => {
                let r = self.ring(ring)?;
                let gens = self.ideal_gens(ring, &r, &IdealRef::Named(ideal.clone()))?;
                amalgamated_duplication(&r, &gens).context(what)
            }
            Construction::Idealization { ring, module } => {
                let r = self.ring(ring)?;
                let decl = self.decls.module(module)?;
                if decl.ring != *ring {
                    return Err(HkError::Invalid(format!(
                        "module `{module}` lives over `{}`, not `{ring}`",
                        decl.ring
                    )));
                }
                idealization(&r, &decl.module).context(what)
            }
        }
    }

    fn construct(&self, c: &Construction) -> Result<Section> {
        let report = self.build(c)?;
        let mut notes = vec![
            format!("construction: {} ({})", report.kind.name(), c.label()),
            ring_to_spec("P", &report.result),
            format!(
                "component dimensions: {}",
                report
                    .component_dims
                    .iter()
                    .map(|d| d.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
            format!("dimension: {}", report.result.dimension()?),
        ];
        for (var, src) in &report.provenance {
            let from = match src {
                VariableSource::Component { component, original } => {
                    format!("component {} variable {original}", component + 1)
                }
                VariableSource::IdealGenerator(s) => format!("ideal generator {}", s + 1),
                VariableSource::ModuleGenerator(i) => format!("module generator {}", i + 1),
            };
            notes.push(format!("  {var} <- {from}"));
        }
        if report.degenerate {
            notes.push("degenerate: the construction returned the base ring".into());
        }
        Ok(Section {
            notes,
            ..Section::default()
        })
    }

    fn verify(&self, target: &Target) -> Result<Section> {
        let tol = &self.job.tolerance;
        let mut out = Section::default();
        match target {
            Target::Value {
                value,
                ring,
                module,
                ideal,
            } => {
                let r = self.ring(ring)?;
                let (table, e_max) = match module {
                    None => self.ring_table(ring, &r, &self.ideal_gens(ring, &r, ideal)?)?,
                    Some(m) => {
                        let decl = self.decls.module(m)?;
                        if decl.ring != *ring {
                            return Err(HkError::Invalid(format!("module `{m}` lives over `{}`", decl.ring)));
                        }
                        self.module_table(m, &decl.module, &self.ideal_gens(ring, &r, ideal)?)?
                    }
                };
                let est = Self::estimate_of(&table);
                let label = table.label.clone();
                out.tables.push(table);
                out.e_max = Some(e_max);
                out.verdicts.push((label, verify(value, &est, tol, "stated value")?));
            }
            Target::Construction(c) => {
                let report = self.build(c)?;
                let product = &report.result;
                let (ptable, e_max) = self.ring_table(&c.label(), product, &product.variables())?;
                let est = Self::estimate_of(&ptable);
                out.e_max = Some(e_max);
                let mut component = |name: &str, ring: &RingPresentation| -> Result<Rational> {
                    let (t, _) = self.ring_table(name, ring, &ring.variables())?;
                    let v = Self::estimate_of(&t).value;
                    out.tables.push(t);
                    Ok(v)
                };
                let one = Rational::from_integer(1.into());
                let (prediction, citation) = match c {
                    Construction::Fiber(r, s) => {
                        let (rr, ss) = (self.ring(r)?, self.ring(s)?);
                        let er = component(r, &rr)?;
                        let es = component(s, &ss)?;
                        let dims = &report.component_dims;
                        (
                            fiber_formula_normalized((&er, dims[0]), (&es, dims[1]), (&one, 0))?,
                            "fiber product over k",
                        )
                    }
                    Construction::MultiFiber(rs) => {
                        let mut ehks = Vec::new();
                        for r in rs {
                            ehks.push(component(r, &*self.ring(r)?)?);
                        }
                        (
                            multi_fiber_formula(&ehks, &report.component_dims, &one, 0)?,
                            "multi-factor fiber product over k",
                        )
                    }
                    Construction::Duplication { ring, ideal } => {
                        let r = self.ring(ring)?;
                        let er = component(ring, &r)?;
                        let (dim_r, dim_q) = (report.component_dims[0], report.component_dims[1]);
                        let eq = if dim_q == dim_r {
                            let gens = self.ideal_gens(ring, &r, &IdealRef::Named(ideal.clone()))?;
                            let quot = r.quotient_by(&gens)?;
                            component(&format!("{ring}/{ideal}"), &quot)?
                        } else {
                            Rational::from_integer(0.into())
                        };
                        (duplication_formula(&er, dim_r, &eq, dim_q)?, "amalgamated duplication")
                    }
                    Construction::Idealization { ring, module } => {
                        let r = self.ring(ring)?;
                        let er = component(ring, &r)?;
                        let decl = self.decls.module(module)?;
                        let (mt, _) = self.module_table(module, &decl.module, &r.variables())?;
                        let em = Self::estimate_of(&mt).value;
                        out.tables.push(mt);
                        (idealization_formula(&er, &em)?, "idealization")
                    }
                };
                let label = ptable.label.clone();
                out.tables.insert(0, ptable);
                out.verdicts.push((label, verify(&prediction, &est, tol, citation)?));
            }
        }
        Ok(out)
    }

    fn wy(&self, name: &str, d: Option<usize>, quadric: Option<&str>) -> Result<Section> {
        let r = self.ring(name)?;
        let (table, e_max) = self.ring_table(name, &r, &r.variables())?;
        let est = Self::estimate_of(&table);
        let d = match d {
            Some(d) => d,
            None => r.dimension()?,
        };
        let mut out = Section {
            tables: vec![table],
            e_max: Some(e_max),
            ..Section::default()
        };
        let qest = match quadric {
            Some(qn) => {
                let qr = self.ring(qn)?;
                let (qt, _) = self.ring_table(qn, &qr, &qr.variables())?;
                let e = Self::estimate_of(&qt);
                out.tables.push(qt);
                Some(e)
            }
            None => None,
        };
        out.verdicts.push((name.to_string(), wy_check(&est, d, qest.as_ref())?));
        Ok(out)
    }
}

fn bounds(kind: BoundKind, d: usize) -> Result<Section> {
    let (label, value) = match kind {
        BoundKind::Fiber(case) => (format!("fiber bound ({case:?}, d={d})"), fiber_bound(case, d)?),
        BoundKind::AberbachEnescu => (format!("1 + delta({d})"), aberbach_enescu_bound(d)?),
        BoundKind::Series => (format!("1 + m_{d}"), Rational::from_integer(1.into()) + zigzag_m(d)?),
        BoundKind::Idealization(n) => (format!("idealization bound (n={n}, d={d})"), idealization_bound(n, d)?),
        BoundKind::IdealizationRank(r) => (
            format!("idealization rank bound (rank={r}, d={d})"),
            idealization_rank_bound(r, d)?,
        ),
        BoundKind::Veronese(r) => (format!("Veronese (r={r}, d={d})"), veronese_hk(r, d)?),
    };
    Ok(Section {
        values: vec![(label, value)],
        ..Section::default()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_rationals() {
        assert_eq!(parse_param_range("n=2..5").unwrap(), ("n".into(), 2, 5));
        assert!(parse_param_range("n=5..2").is_err());
        assert!(parse_param_range("n2..5").is_err());
        assert_eq!(parse_rational("13/40").unwrap(), Rational::new(13.into(), 40.into()));
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn default_e_max() {
        let job = JobSpec::new("", Command::Bounds { kind: BoundKind::Series, d: 3 });
        assert_eq!(job.e_max_for(2), 4);
        assert_eq!(job.e_max_for(3), 3);
        assert_eq!(job.e_max_for(5), 2);
        assert_eq!(job.e_max_for(31), 2);
    }
}
