//! One function per subcommand, each turning a parsed document into a report.

use stacky_core::crepant::{hilbert_compare, is_crepant, is_smooth, is_subdivision};
use stacky_core::fan::BoxElement;
use stacky_core::inertia::{inertia_components, moduli_components};
use stacky_core::lattice::{cokernel_is_finite, double_dual_check, gale_dual};
use stacky_core::ring::{chow_graded_dims, h_vector, orbifold_chow, square_zero_degree_one, SquareZero};
use stacky_core::Error;

use crate::report::*;
use crate::{CliError, InputDocument};

pub fn validate(doc: &InputDocument) -> Result<ValidateReport, CliError> {
    let fan = doc.stacky_fan()?;
    let subdivision_valid = doc.fine_fan()?.map(|_| true);
    Ok(ValidateReport {
        valid: true,
        group: fan.group().to_string(),
        dim: fan.dim(),
        rays: fan.ray_count(),
        max_cones: fan.fan().max_cones().iter().map(|c| one_based(c)).collect(),
        f_vector: fan.fan().f_vector(),
        complete: fan.is_complete(),
        subdivision_valid,
        input: doc.normalized()?,
    })
}

pub fn gale(doc: &InputDocument) -> Result<GaleReport, CliError> {
    let beta = doc.homomorphism()?;
    if !cokernel_is_finite(&beta) {
        return Err(Error::InfiniteCokernel.into());
    }
    let dual = gale_dual(&beta);
    Ok(GaleReport {
        dual_group: dual.dual_group.to_string(),
        rank: dual.dual_group.rank(),
        torsion: dual.dual_group.torsion().iter().map(int_value).collect(),
        beta_vee: GaleReport::matrix_rows(&dual.dual_map),
        double_dual: double_dual_check(&beta)?,
        input: doc.normalized()?,
    })
}

pub fn boxes(doc: &InputDocument) -> Result<BoxReport, CliError> {
    let fan = doc.stacky_fan()?;
    let elements = fan.box_elements()?.iter().map(BoxRow::new).collect();
    Ok(BoxReport { elements, input: doc.normalized()? })
}

pub fn sectors(doc: &InputDocument) -> Result<SectorsReport, CliError> {
    let fan = doc.stacky_fan()?;
    let sectors = inertia_components(&fan)?
        .into_iter()
        .map(|s| SectorRow {
            sector: BoxRow::new(&s.box_element),
            age: rat_string(&s.age),
            quotient: QuotientSummary {
                dim: s.sector_fan.fan.dim(),
                rays: one_based(&s.sector_fan.rays),
                max_cones: s.sector_fan.fan.fan().max_cones().len(),
                group: s.sector_fan.fan.group().to_string(),
            },
            local_group: fan.local_group(&s.box_element.minimal_cone).to_string(),
        })
        .collect();
    Ok(SectorsReport { sectors, input: doc.normalized()? })
}

pub fn chow(doc: &InputDocument) -> Result<ChowReport, CliError> {
    let fan = doc.stacky_fan()?;
    let dims = chow_graded_dims(&fan)?;
    let h = h_vector(fan.fan())?;
    Ok(ChowReport { agree: dims == h, dims, h_vector: h, input: doc.normalized()? })
}

fn sector_of(v: &BoxElement) -> (ElementOut, String) {
    (ElementOut::new(&v.element), element_text(&v.element))
}

pub fn orbifold(doc: &InputDocument, with_table: bool) -> Result<OrbifoldReport, CliError> {
    let fan = doc.stacky_fan()?;
    let pres = orbifold_chow(&fan)?;
    let square_zero_degree_one = match square_zero_degree_one(&pres) {
        SquareZero::Exists(w) => SquareZeroOut { verdict: "exists".into(), witness: Some(w.iter().map(rat_string).collect()) },
        SquareZero::NotExists => SquareZeroOut { verdict: "not_exists".into(), witness: None },
        SquareZero::Undecided => SquareZeroOut { verdict: "undecided".into(), witness: None },
    };
    let table = with_table.then(|| {
        let basis = pres
            .basis
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let (sector, sector_text) = sector_of(&b.sector);
                BasisRow {
                    index: i + 1,
                    element: ElementOut::new(&b.element),
                    degree: rat_string(&b.degree),
                    sector,
                    text: element_text(&b.element),
                    sector_text,
                }
            })
            .collect();
        let products = pres
            .structure_constants
            .iter()
            .filter(|((a, b), _)| a <= b)
            .map(|((a, b), out)| ProductRow {
                left: a + 1,
                right: b + 1,
                result: out.iter().map(|(k, c)| Term { coefficient: rat_string(c), basis: k + 1 }).collect(),
            })
            .collect();
        ChowTable { basis, products }
    });
    Ok(OrbifoldReport {
        dims: dim_entries(&pres.dims),
        total: pres.total_dim(),
        square_zero_degree_one,
        table,
        input: doc.normalized()?,
    })
}

pub fn moduli(doc: &InputDocument) -> Result<ModuliReport, CliError> {
    let fan = doc.stacky_fan()?;
    let components = moduli_components(&fan)?
        .into_iter()
        .map(|c| ComponentRow {
            triple: [ElementOut::new(&c.triple[0].element), ElementOut::new(&c.triple[1].element), ElementOut::new(&c.triple[2].element)],
            cone: one_based(&c.cone),
            exponents: c.exponents.iter().map(|(k, m)| (k + 1, int_value(m))).collect(),
            component_dim: c.component_fan.fan.dim(),
            text: [element_text(&c.triple[0].element), element_text(&c.triple[1].element), element_text(&c.triple[2].element)],
        })
        .collect();
    Ok(ModuliReport { components, input: doc.normalized()? })
}

pub fn crepant(doc: &InputDocument) -> Result<CrepantReport, CliError> {
    let pair = doc.subdivision_pair()?;
    let family = hilbert_compare(&pair)?;
    let g = family.ideal_generators;
    Ok(CrepantReport {
        is_subdivision: is_subdivision(&pair.fine, &pair.coarse),
        fine_smooth: is_smooth(&pair.fine),
        crepant: is_crepant(&pair),
        support_function: family.support.map(|h| h.iter().map(int_value).collect()),
        orbifold_dims: dim_entries(&family.orbifold_dims),
        resolution_dims: dim_entries(&family.resolution_dims),
        equal: family.equal,
        warnings: family.warnings,
        ideals: IdealsOut {
            i1: g.linear,
            i2: g.product,
            i1_t: g.linear_weighted,
            i2_t: g.product_weighted,
            stanley_reisner: g.stanley_reisner,
        },
        input: doc.normalized()?,
    })
}

/// Exit code of a crepant comparison: 0 equal, 3 unequal, 2 failed precondition.
pub fn crepant_exit_code(r: &CrepantReport) -> u8 {
    if !r.warnings.is_empty() {
        2
    } else if r.equal {
        0
    } else {
        3
    }
}
