//! JSON interchange formats. A representation travels as its generator
//! matrices with every entry written as a dense coordinate vector in the
//! power basis of Q(zeta_m); an analysis travels as a flat document of the
//! computed invariants. All rationals are serialized as decimal strings so
//! readers need no fixed integer width, and field order is deterministic so
//! re-exports are byte-identical.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cyclo::{euler_phi, factorize, CyclotomicNumber, Rational};
use crate::error::{Error, Result};
use crate::group::MatrixGroup;
use crate::matrix::CycloMatrix;
use crate::rep::Representation;
use crate::stiefel::{propagation_report, PropagationReport};

pub const SCHEMA_VERSION: u32 = 1;

/// A rational number as [numerator, denominator] decimal strings.
pub type RationalPair = [String; 2];

/// One matrix entry: exactly phi(conductor) coordinates in the power basis
/// 1, zeta, ..., zeta^{phi(conductor)-1}.
pub type EntryCoordinates = Vec<RationalPair>;

/// Generator matrices over a single cyclotomic field, ready to enumerate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepInputDocument {
    pub schema: u32,
    pub conductor: u64,
    pub degree: usize,
    /// generators[g][i][j] is the coordinate vector of entry (i, j).
    pub generators: Vec<Vec<Vec<EntryCoordinates>>>,
}

/// Counts of elementary abelian subgroups by rank at the analysis prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankSummary {
    pub p: u64,
    pub r_p: usize,
    /// subgroup_counts[t] = number of elementary abelian subgroups of rank
    /// t+1.
    pub subgroup_counts: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerSummary {
    /// ranks[k] = maximal isotropy rank on U(n)/U(k), k = 0..=n.
    pub ranks: Vec<usize>,
    /// breakpoints[t] = first stage at which rank t occurs.
    pub breakpoints: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrosscheckSummary {
    pub p: u64,
    pub fixity: i64,
    pub r_p: usize,
    pub sylow_order: usize,
    pub rank_matches: bool,
    pub cyclic_center: bool,
    pub abelian_maximal: bool,
    pub all_pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropagationSummary {
    pub stage: u32,
    pub free: bool,
    pub coprime: bool,
    pub chi_tor: RationalPair,
    pub swan_unit: Option<u64>,
    pub tier: String,
    pub target: Vec<u64>,
    pub notes: Vec<String>,
}

impl PropagationSummary {
    pub fn from_report(r: &PropagationReport) -> Self {
        PropagationSummary {
            stage: r.stage,
            free: r.free,
            coprime: r.coprime,
            chi_tor: rational_pair(&r.chi_tor),
            swan_unit: r.swan_unit,
            tier: r.tier.to_string(),
            target: r.target.clone(),
            notes: r.notes.clone(),
        }
    }
}

/// Everything the analysis pipeline computes for one representation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisDocument {
    pub schema: u32,
    pub group_order: usize,
    pub degree: usize,
    pub conductor: u64,
    pub fixity: i64,
    pub witness: Option<u32>,
    pub irreducible: bool,
    pub rank_inventory: RankSummary,
    pub isotropy_tower: TowerSummary,
    /// Absent when the crosscheck precondition fixity < p fails.
    pub crosscheck: Option<CrosscheckSummary>,
    pub propagation: Vec<PropagationSummary>,
    pub notes: Vec<String>,
}

fn rational_pair(x: &Rational) -> RationalPair {
    [x.numer().to_string(), x.denom().to_string()]
}

fn parse_bigint(s: &str, context: &str) -> Result<BigInt> {
    BigInt::from_str(s.trim())
        .map_err(|_| Error::Schema(format!("{context}: '{s}' is not a decimal integer")))
}

/// Largest prime factor of the group order; the prime all rank and
/// classification questions are asked at. Falls back to 2 for the trivial
/// group.
pub fn analysis_prime(order: usize) -> u64 {
    factorize(order as u64)
        .into_iter()
        .map(|(p, _)| p)
        .max()
        .unwrap_or(2)
}

/// Serializes the generator matrices of a representation.
pub fn export_representation(rep: &Representation) -> RepInputDocument {
    let group = rep.group();
    let conductor = group.conductor();
    let phi = euler_phi(conductor) as usize;
    let degree = group.degree();
    let mut generators = Vec::with_capacity(group.n_generators());
    for slot in 0..group.n_generators() {
        let matrix = group.element(group.generator_index(slot));
        let mut rows = Vec::with_capacity(degree);
        for i in 0..degree {
            let mut row = Vec::with_capacity(degree);
            for j in 0..degree {
                let mut dense = vec![[String::from("0"), String::from("1")]; phi];
                for (idx, r) in matrix.entry(i, j).coords() {
                    dense[*idx as usize] = rational_pair(r);
                }
                row.push(dense);
            }
            rows.push(row);
        }
        generators.push(rows);
    }
    RepInputDocument {
        schema: SCHEMA_VERSION,
        conductor,
        degree,
        generators,
    }
}

fn entry_from_coords(
    conductor: u64,
    coords: &EntryCoordinates,
    context: &str,
) -> Result<CyclotomicNumber> {
    let phi = euler_phi(conductor) as usize;
    if coords.len() != phi {
        return Err(Error::Schema(format!(
            "{context}: expected {phi} coordinates, found {}",
            coords.len()
        )));
    }
    let mut acc = CyclotomicNumber::zero(conductor)?;
    for (idx, [num, den]) in coords.iter().enumerate() {
        let numerator = parse_bigint(num, context)?;
        let denominator = parse_bigint(den, context)?;
        if denominator == BigInt::from(0) {
            return Err(Error::Schema(format!(
                "{context}: coordinate {idx} has denominator zero"
            )));
        }
        let value = Rational::new(numerator, denominator);
        if value == Rational::from_integer(0.into()) {
            continue;
        }
        let basis = CyclotomicNumber::root_of_unity(conductor, idx as i64)?;
        acc = acc.add(&basis.scale(&value))?;
    }
    Ok(acc)
}

/// Validates a document and enumerates the group it generates.
pub fn import_representation(doc: &RepInputDocument, cap: usize) -> Result<Representation> {
    if doc.schema != SCHEMA_VERSION {
        return Err(Error::Schema(format!(
            "unsupported schema version {} (expected {SCHEMA_VERSION})",
            doc.schema
        )));
    }
    if doc.conductor == 0 {
        return Err(Error::Schema("conductor must be at least 1".into()));
    }
    if doc.degree == 0 {
        return Err(Error::Schema("degree must be at least 1".into()));
    }
    if doc.generators.is_empty() {
        return Err(Error::Schema("document contains no generators".into()));
    }
    let mut matrices = Vec::with_capacity(doc.generators.len());
    for (g, rows) in doc.generators.iter().enumerate() {
        if rows.len() != doc.degree {
            return Err(Error::Schema(format!(
                "generator {g}: expected {} rows, found {}",
                doc.degree,
                rows.len()
            )));
        }
        let mut matrix_rows = Vec::with_capacity(doc.degree);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != doc.degree {
                return Err(Error::Schema(format!(
                    "generator {g}, row {i}: expected {} entries, found {}",
                    doc.degree,
                    row.len()
                )));
            }
            let mut out_row = Vec::with_capacity(doc.degree);
            for (j, coords) in row.iter().enumerate() {
                let context = format!("generator {g}, row {i}, column {j}");
                out_row.push(entry_from_coords(doc.conductor, coords, &context)?);
            }
            matrix_rows.push(out_row);
        }
        matrices.push(CycloMatrix::from_rows(matrix_rows)?);
    }
    let group = MatrixGroup::generate(matrices, cap)?;
    Representation::from_group(group)
}

/// Runs the full pipeline: fixity, irreducibility, rank inventory, isotropy
/// tower, classification crosscheck at the analysis prime, and a
/// propagation report for each requested stage. With `paranoid` set, every
/// fixed dimension is recomputed through kernel ranks first and any
/// disagreement aborts the run.
pub fn build_analysis(
    rep: &Representation,
    stages: &[u32],
    paranoid: bool,
) -> Result<AnalysisDocument> {
    if paranoid {
        rep.verify_fixed_dims_kernel()?;
    }
    let mut notes = Vec::new();
    let fixity_report = rep.fixity()?;
    if fixity_report.trivial_group {
        notes.push("trivial group: fixity is -1 by convention".into());
    }
    let p = analysis_prime(rep.order());
    let inventory = rep.group().p_rank(p);
    let tower = rep.isotropy_tower()?;
    let crosscheck = if fixity_report.trivial_group {
        None
    } else {
        match rep.classification_crosscheck(p) {
            Ok(record) => Some(CrosscheckSummary {
                p: record.p,
                fixity: record.fixity,
                r_p: record.r_p,
                sylow_order: record.sylow_order,
                rank_matches: record.rank_matches,
                cyclic_center: record.cyclic_center,
                abelian_maximal: record.abelian_maximal,
                all_pass: record.all_pass(),
            }),
            Err(Error::PreconditionViolation { fixity, p }) => {
                notes.push(format!(
                    "classification crosscheck skipped: fixity {fixity} >= p = {p}"
                ));
                None
            }
            Err(e) => return Err(e),
        }
    };
    let mut propagation = Vec::with_capacity(stages.len());
    for &k in stages {
        propagation.push(PropagationSummary::from_report(&propagation_report(
            rep, k,
        )?));
    }
    Ok(AnalysisDocument {
        schema: SCHEMA_VERSION,
        group_order: rep.order(),
        degree: rep.degree(),
        conductor: rep.group().conductor(),
        fixity: fixity_report.fixity,
        witness: fixity_report.witness,
        irreducible: rep.is_irreducible()?,
        rank_inventory: RankSummary {
            p: inventory.p,
            r_p: inventory.r_p,
            subgroup_counts: inventory.by_rank.iter().map(|v| v.len()).collect(),
        },
        isotropy_tower: TowerSummary {
            ranks: tower.ranks,
            breakpoints: tower.breakpoints,
        },
        crosscheck,
        propagation,
        notes,
    })
}

/// Default propagation stage: k = n - f - 1, the last stage where the
/// action is still free, clamped to [0, n-1]. Trivial groups get the top
/// stage.
pub fn default_stage(degree: usize, fixity: i64) -> u32 {
    let n = degree as i64;
    (n - fixity - 1).clamp(0, n - 1) as u32
}

/// Canonical serialized form: pretty-printed, newline-terminated.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn rep_document_from_json(text: &str) -> Result<RepInputDocument> {
    Ok(serde_json::from_str(text)?)
}

pub fn analysis_document_from_json(text: &str) -> Result<AnalysisDocument> {
    Ok(serde_json::from_str(text)?)
}
