//! Report types. Each renders as a human table or serializes to JSON;
//! rationals are written `p/q` (integers as `p`), rays and cones 1-based.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use stacky_core::fan::BoxElement;
use stacky_core::lattice::{GroupElement, IntegerMatrix};
use stacky_core::num::{Int, Rat};

use crate::InputDocument;

pub trait Report: Serialize {
    fn human(&self) -> String;

    fn json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

pub fn int_value(x: &Int) -> Value {
    i64::try_from(x).map_or_else(|_| Value::String(x.to_string()), Value::from)
}

pub fn rat_string(x: &Rat) -> String {
    x.to_string()
}

pub fn one_based(cone: &[usize]) -> Vec<usize> {
    cone.iter().map(|i| i + 1).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ElementOut {
    pub free: Vec<Value>,
    pub torsion: Vec<Value>,
}

impl ElementOut {
    pub fn new(e: &GroupElement) -> Self {
        ElementOut { free: e.free.iter().map(int_value).collect(), torsion: e.torsion.iter().map(int_value).collect() }
    }
}

/// `(a,b)` or `(a,b | t)` when there is torsion.
pub fn element_text(e: &GroupElement) -> String {
    let join = |v: &[Int]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    if e.torsion.is_empty() {
        format!("({})", join(&e.free))
    } else {
        format!("({} | {})", join(&e.free), join(&e.torsion))
    }
}

fn cone_text(c: &[usize]) -> String {
    format!("{{{}}}", c.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","))
}

#[derive(Clone, Debug, Serialize)]
pub struct DimEntry {
    pub degree: String,
    pub count: usize,
}

pub fn dim_entries(dims: &BTreeMap<Rat, usize>) -> Vec<DimEntry> {
    dims.iter().map(|(q, n)| DimEntry { degree: rat_string(q), count: *n }).collect()
}

fn dims_line(dims: &[DimEntry]) -> String {
    dims.iter().map(|d| format!("{}: {}", d.degree, d.count)).collect::<Vec<_>>().join(", ")
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidateReport {
    pub valid: bool,
    pub group: String,
    pub dim: usize,
    pub rays: usize,
    pub max_cones: Vec<Vec<usize>>,
    pub f_vector: Vec<usize>,
    pub complete: bool,
    pub subdivision_valid: Option<bool>,
    pub input: InputDocument,
}

impl Report for ValidateReport {
    fn human(&self) -> String {
        let mut s = format!(
            "valid stacky fan over {}: {} rays, {} maximal cones, {}\nf-vector: {:?}\n",
            self.group,
            self.rays,
            self.max_cones.len(),
            if self.complete { "complete" } else { "not complete" },
            self.f_vector
        );
        if self.subdivision_valid == Some(true) {
            s += "subdivision block: valid stacky fan\n";
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GaleReport {
    pub dual_group: String,
    pub rank: usize,
    pub torsion: Vec<Value>,
    /// Column `i` is the image of the `i`-th dual basis vector.
    pub beta_vee: Vec<Vec<Value>>,
    pub double_dual: bool,
    pub input: InputDocument,
}

impl GaleReport {
    pub fn matrix_rows(m: &IntegerMatrix) -> Vec<Vec<Value>> {
        (0..m.rows()).map(|r| (0..m.cols()).map(|c| int_value(m.get(r, c))).collect()).collect()
    }

    fn matrix_text(&self) -> String {
        let rows: Vec<String> =
            self.beta_vee.iter().map(|r| r.iter().map(|v| v.to_string().trim_matches('"').to_string()).collect::<Vec<_>>().join(" ")).collect();
        format!("[{}]", rows.join("; "))
    }
}

impl Report for GaleReport {
    fn human(&self) -> String {
        format!(
            "DG = {}; beta_vee = {}\ndouble dual equivalent to beta: {}\n",
            self.dual_group,
            self.matrix_text(),
            if self.double_dual { "yes" } else { "no" }
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoxRow {
    pub element: ElementOut,
    pub minimal_cone: Vec<usize>,
    /// Ray (1-based) to fractional coordinate.
    pub frac_coords: BTreeMap<usize, String>,
    pub age: String,
    #[serde(skip)]
    pub text: String,
}

impl BoxRow {
    pub fn new(v: &BoxElement) -> Self {
        BoxRow {
            element: ElementOut::new(&v.element),
            minimal_cone: one_based(&v.minimal_cone),
            frac_coords: v.frac_coords.iter().map(|(&i, q)| (i + 1, rat_string(q))).collect(),
            age: rat_string(&v.age),
            text: element_text(&v.element),
        }
    }

    fn coords_text(&self) -> String {
        let parts: Vec<String> = self.frac_coords.iter().map(|(i, q)| format!("{q}*b{i}")).collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoxReport {
    pub elements: Vec<BoxRow>,
    pub input: InputDocument,
}

fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut s = line(header.iter().map(|h| h.to_string()).collect());
    for r in rows {
        s += &line(r.clone());
    }
    s
}

impl Report for BoxReport {
    fn human(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .elements
            .iter()
            .map(|b| vec![b.text.clone(), cone_text(&b.minimal_cone), b.coords_text(), b.age.clone()])
            .collect();
        format!("{} box elements\n{}", rows.len(), table(&["element", "cone", "coordinates", "age"], &rows))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientSummary {
    pub dim: usize,
    /// Parent rays (1-based) of the quotient rays.
    pub rays: Vec<usize>,
    pub max_cones: usize,
    pub group: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SectorRow {
    pub sector: BoxRow,
    pub age: String,
    pub quotient: QuotientSummary,
    /// `N(σ(v̄))`.
    pub local_group: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SectorsReport {
    pub sectors: Vec<SectorRow>,
    pub input: InputDocument,
}

impl Report for SectorsReport {
    fn human(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .sectors
            .iter()
            .map(|s| {
                vec![
                    s.sector.text.clone(),
                    s.age.clone(),
                    cone_text(&s.sector.minimal_cone),
                    format!(
                        "dim {} over {}, rays {}, {} maximal",
                        s.quotient.dim,
                        s.quotient.group,
                        cone_text(&s.quotient.rays),
                        s.quotient.max_cones
                    ),
                    s.local_group.clone(),
                ]
            })
            .collect();
        format!("{} sectors\n{}", rows.len(), table(&["element", "age", "cone", "sector fan", "local group"], &rows))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ChowReport {
    pub dims: Vec<usize>,
    pub h_vector: Vec<usize>,
    pub agree: bool,
    pub input: InputDocument,
}

impl Report for ChowReport {
    fn human(&self) -> String {
        let line = |v: &[usize]| v.iter().enumerate().map(|(k, n)| format!("{k}: {n}")).collect::<Vec<_>>().join(", ");
        format!(
            "dims: {}\nh-vector: {}\nagree: {}\n",
            line(&self.dims),
            line(&self.h_vector),
            if self.agree { "yes" } else { "no" }
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisRow {
    pub index: usize,
    pub element: ElementOut,
    pub degree: String,
    pub sector: ElementOut,
    #[serde(skip)]
    pub text: String,
    #[serde(skip)]
    pub sector_text: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Term {
    pub coefficient: String,
    pub basis: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductRow {
    pub left: usize,
    pub right: usize,
    pub result: Vec<Term>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChowTable {
    pub basis: Vec<BasisRow>,
    /// Nonzero products `e_a * e_b` with `a <= b`.
    pub products: Vec<ProductRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SquareZeroOut {
    pub verdict: String,
    pub witness: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbifoldReport {
    pub dims: Vec<DimEntry>,
    pub total: usize,
    pub square_zero_degree_one: SquareZeroOut,
    pub table: Option<ChowTable>,
    pub input: InputDocument,
}

pub fn terms_text(terms: &[Term]) -> String {
    let mut s = String::new();
    for t in terms {
        let (neg, mag) = match t.coefficient.strip_prefix('-') {
            Some(m) => (true, m),
            None => (false, t.coefficient.as_str()),
        };
        let body = if mag == "1" { format!("e{}", t.basis) } else { format!("{mag}*e{}", t.basis) };
        if s.is_empty() {
            s = if neg { format!("-{body}") } else { body };
        } else {
            let _ = write!(s, " {} {body}", if neg { "-" } else { "+" });
        }
    }
    s
}

impl Report for OrbifoldReport {
    fn human(&self) -> String {
        let mut s = format!("dims: {}\ntotal: {}\n", dims_line(&self.dims), self.total);
        let _ = write!(s, "square-zero degree-one element: {}", self.square_zero_degree_one.verdict);
        if let Some(w) = &self.square_zero_degree_one.witness {
            let _ = write!(s, " (coefficients {})", w.join(", "));
        }
        s.push('\n');
        if let Some(t) = &self.table {
            let rows: Vec<Vec<String>> = t
                .basis
                .iter()
                .map(|b| vec![format!("e{}", b.index), b.text.clone(), b.degree.clone(), b.sector_text.clone()])
                .collect();
            s += "\n";
            s += &table(&["basis", "monomial", "degree", "sector"], &rows);
            s += "\n";
            for p in &t.products {
                let _ = writeln!(s, "e{} * e{} = {}", p.left, p.right, terms_text(&p.result));
            }
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentRow {
    pub triple: [ElementOut; 3],
    pub cone: Vec<usize>,
    /// Ray (1-based) to `m_k`.
    pub exponents: BTreeMap<usize, Value>,
    pub component_dim: usize,
    #[serde(skip)]
    pub text: [String; 3],
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuliReport {
    pub components: Vec<ComponentRow>,
    pub input: InputDocument,
}

impl Report for ModuliReport {
    fn human(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .components
            .iter()
            .map(|c| {
                let exps: Vec<String> = c.exponents.iter().map(|(k, m)| format!("m{k}={m}")).collect();
                vec![
                    c.text.join(" "),
                    cone_text(&c.cone),
                    if exps.is_empty() { "-".into() } else { exps.join(" ") },
                    c.component_dim.to_string(),
                ]
            })
            .collect();
        format!("{} components\n{}", rows.len(), table(&["triple", "cone", "exponents", "dim"], &rows))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdealsOut {
    pub i1: Vec<String>,
    pub i2: Vec<String>,
    pub i1_t: Vec<String>,
    pub i2_t: Vec<String>,
    pub stanley_reisner: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrepantReport {
    pub is_subdivision: bool,
    pub fine_smooth: bool,
    pub crepant: bool,
    pub support_function: Option<Vec<Value>>,
    pub orbifold_dims: Vec<DimEntry>,
    pub resolution_dims: Vec<DimEntry>,
    pub equal: bool,
    pub warnings: Vec<String>,
    pub ideals: IdealsOut,
    pub input: InputDocument,
}

impl Report for CrepantReport {
    fn human(&self) -> String {
        let yn = |b: bool| if b { "yes" } else { "no" };
        let mut s = format!(
            "subdivision: {}\nfine fan smooth: {}\ncrepant: {}\n",
            yn(self.is_subdivision),
            yn(self.fine_smooth),
            yn(self.crepant)
        );
        match &self.support_function {
            Some(h) => {
                let _ = writeln!(s, "support function: {}", h.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "));
            }
            None => s += "support function: none (not regular)\n",
        }
        let _ = writeln!(s, "orbifold dims: {}", dims_line(&self.orbifold_dims));
        let _ = writeln!(s, "resolution dims: {}", dims_line(&self.resolution_dims));
        let _ = writeln!(s, "equal: {}", yn(self.equal));
        for w in &self.warnings {
            let _ = writeln!(s, "warning: {w}");
        }
        for (name, list) in [
            ("I1", &self.ideals.i1),
            ("I2", &self.ideals.i2),
            ("I1(t)", &self.ideals.i1_t),
            ("I2(t)", &self.ideals.i2_t),
            ("I_SR", &self.ideals.stanley_reisner),
        ] {
            let _ = writeln!(s, "{name}: <{}>", list.join(", "));
        }
        s
    }
}
