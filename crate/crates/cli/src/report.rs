//! Report structures shared by the commands, with JSON and text renderers.
//!
//! Reports are plain data: every collection is built in a canonical order
//! (index sets sorted, elements in stored order, suites in selection order),
//! so serialising the same analysis twice yields byte-identical output. The
//! JSON form carries a `schema` version field; the text form prints the same
//! content as an indented summary.

use serde::Serialize;
use subdirect::decomp::{self, Decomposition};
use subdirect::structural::{
    block_system, matched_tuple_system, smashed_system, IsoSystem, StructuralIso,
};
use subdirect::{Error, IndexSet, ProductSubgroup, Tuple};

type Result<T> = std::result::Result<T, Error>;

pub const SCHEMA: u32 = 1;

/// Orders above this are summarised instead of listed element by element.
const LISTING_BOUND: usize = 128;

/// Per-factor canonical names for one tuple.
pub fn tuple_names(u: &ProductSubgroup, t: &Tuple) -> Vec<String> {
    t.iter()
        .enumerate()
        .map(|(i, &x)| u.ambient().factor(i).element_name(x))
        .collect()
}

fn listing(u: &ProductSubgroup, elements: &[Tuple]) -> (Option<Vec<Vec<String>>>, Option<String>) {
    if elements.len() > LISTING_BOUND {
        (
            None,
            Some(format!("{} elements, listing suppressed", elements.len())),
        )
    } else {
        (
            Some(elements.iter().map(|t| tuple_names(u, t)).collect()),
            None,
        )
    }
}

#[derive(Serialize)]
pub struct SubjectEcho {
    pub name: String,
    pub declaration: String,
    pub ambient: String,
    pub factors: Vec<FactorEcho>,
    pub order: usize,
    pub subdirect: bool,
    /// One-based indices where the projection of the subgroup is trivial.
    pub trivial_projections: Vec<usize>,
    pub trivial_supports: Vec<usize>,
}

#[derive(Serialize)]
pub struct FactorEcho {
    pub label: String,
    pub order: usize,
}

impl SubjectEcho {
    pub fn new(name: &str, declaration: &str, u: &ProductSubgroup) -> SubjectEcho {
        let ambient = u.ambient();
        SubjectEcho {
            name: name.to_string(),
            declaration: declaration.to_string(),
            ambient: ambient.label().to_string(),
            factors: ambient
                .factors()
                .iter()
                .map(|f| FactorEcho {
                    label: f.label().to_string(),
                    order: f.order(),
                })
                .collect(),
            order: u.order(),
            subdirect: u.is_subdirect(),
            trivial_projections: u.trivial_projections().iter().map(|i| i + 1).collect(),
            trivial_supports: u.trivial_supports().iter().map(|i| i + 1).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct FamilyRow {
    pub indices: String,
    /// Order of the projection kernel at these indices.
    pub kernel_order: usize,
    /// Order of the support subgroup at these indices.
    pub support_order: usize,
}

#[derive(Serialize)]
pub struct CoreReport {
    pub order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elements_note: Option<String>,
}

#[derive(Serialize)]
pub struct DecompReport {
    pub blocks: Vec<BlockRow>,
    pub complete: bool,
}

#[derive(Serialize)]
pub struct BlockRow {
    pub indices: String,
    pub order: usize,
}

impl DecompReport {
    pub fn of(d: &Decomposition) -> DecompReport {
        DecompReport {
            blocks: d
                .blocks()
                .iter()
                .map(|(ix, sub)| BlockRow {
                    indices: ix.to_string(),
                    order: sub.order(),
                })
                .collect(),
            complete: d.is_complete(),
        }
    }
}

#[derive(Serialize)]
pub struct WeakRow {
    pub s: usize,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

#[derive(Serialize)]
pub struct SplitReport {
    pub indices: String,
    pub complement: String,
    pub source: QuotientEcho,
    pub target: QuotientEcho,
    pub map: Vec<MapRow>,
    pub verified: bool,
    pub prolongation_order: usize,
    /// Whether reassembling the extracted data reproduced the subgroup.
    pub reconstructed: bool,
}

#[derive(Serialize)]
pub struct QuotientEcho {
    pub label: String,
    pub order: usize,
}

#[derive(Serialize)]
pub struct MapRow {
    pub from: String,
    pub to: String,
}

#[derive(Serialize)]
pub struct SystemReport {
    pub kind: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference_order: Option<usize>,
    pub members: Vec<MemberRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
    pub warnings: Vec<String>,
}

#[derive(Serialize)]
pub struct MemberRow {
    pub label: String,
    pub indices: String,
    pub quotient_order: usize,
}

/// The analysis proper, shared between `analyze` and `construct`.
#[derive(Serialize)]
pub struct AnalysisBody {
    pub warnings: Vec<String>,
    pub family: Vec<FamilyRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family_note: Option<String>,
    pub core: CoreReport,
    pub touch_classes: usize,
    pub connected: DecompReport,
    pub cohesive: DecompReport,
    pub smashed: bool,
    pub weakly_smashed: Vec<WeakRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub split: Option<SplitReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub systems: Option<Vec<SystemReport>>,
}

#[derive(Serialize)]
pub struct AnalyzeReport {
    pub schema: u32,
    pub command: String,
    pub subject: SubjectEcho,
    #[serde(flatten)]
    pub body: AnalysisBody,
}

/// Index sets whose kernel and support orders appear in the family table.
/// Small arities list every nonempty proper set; larger ones only the
/// singletons and their complements.
fn family_sets(n: usize) -> (Vec<IndexSet>, Option<String>) {
    if n <= 6 {
        let sets = IndexSet::full(n)
            .subsets_nonempty()
            .into_iter()
            .filter(|s| s.is_proper(n))
            .collect();
        (sets, None)
    } else {
        let mut sets = Vec::new();
        for i in 0..n {
            sets.push(IndexSet::singleton(i));
        }
        for i in 0..n {
            sets.push(IndexSet::singleton(i).complement(n));
        }
        sets.sort_by(|a, b| {
            a.len()
                .cmp(&b.len())
                .then_with(|| a.members().cmp(b.members()))
        });
        (
            sets,
            Some(format!(
                "{n} factors: the family table lists only singletons and their complements"
            )),
        )
    }
}

pub fn analysis_body(
    u: &ProductSubgroup,
    warnings: Vec<String>,
    split: Option<&IndexSet>,
    with_systems: bool,
) -> Result<AnalysisBody> {
    use rayon::prelude::*;

    let n = u.arity();
    let (sets, family_note) = family_sets(n);
    let family: Vec<FamilyRow> = sets
        .par_iter()
        .map(|lam| -> Result<FamilyRow> {
            Ok(FamilyRow {
                indices: lam.to_string(),
                kernel_order: u.projection_kernel(lam)?.order(),
                support_order: u.support_subgroup(lam)?.order(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let core = u.core();
    let (core_elements, core_note) = listing(u, core.elements());
    let weakly_smashed = (1..n)
        .map(|s| -> Result<WeakRow> {
            Ok(WeakRow {
                s,
                holds: decomp::is_s_weakly_smashed(u, s)?,
                warning: decomp::weak_smash_range_warning(n, s),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let split = match split {
        Some(lam) => Some(split_report(u, lam)?),
        None => None,
    };
    let systems = if with_systems {
        Some(system_reports(u))
    } else {
        None
    };

    Ok(AnalysisBody {
        warnings,
        family,
        family_note,
        core: CoreReport {
            order: core.order(),
            elements: core_elements,
            elements_note: core_note,
        },
        touch_classes: u.touch_partition().class_count(),
        connected: DecompReport::of(&decomp::connected_components(u)),
        cohesive: DecompReport::of(&decomp::cohesive_blocks(u)),
        smashed: decomp::is_smashed(u),
        weakly_smashed,
        split,
        systems,
    })
}

fn split_report(u: &ProductSubgroup, lam: &IndexSet) -> Result<SplitReport> {
    use subdirect::structural::{split_iso, SplitData};

    let iso: StructuralIso = split_iso(u, lam)?;
    let data = SplitData::extract(u, lam)?;
    let reconstructed = data.assemble()?.elements() == u.elements();
    Ok(SplitReport {
        indices: iso.lam().to_string(),
        complement: iso.lam_hat().to_string(),
        source: quotient_echo(iso.source()),
        target: quotient_echo(iso.target()),
        map: iso
            .map()
            .iter()
            .enumerate()
            .map(|(i, &j)| MapRow {
                from: iso.source().coset_name(i),
                to: iso.target().coset_name(j),
            })
            .collect(),
        verified: iso.verify().is_iso(),
        prolongation_order: iso.prolongation().quotient().order(),
        reconstructed,
    })
}

fn quotient_echo(q: &subdirect::group::QuotientGroup) -> QuotientEcho {
    QuotientEcho {
        label: q.label().to_string(),
        order: q.order(),
    }
}

/// The three quotient systems, each reported even when its preconditions
/// fail; a failure becomes a `skipped` status instead of an error.
fn system_reports(u: &ProductSubgroup) -> Vec<SystemReport> {
    vec![
        system_report("matched-tuple", matched_tuple_system(u)),
        system_report("smashed", smashed_system(u)),
        system_report("block", block_system(u)),
    ]
}

fn system_report(kind: &str, result: Result<IsoSystem>) -> SystemReport {
    match result {
        Ok(sys) => SystemReport {
            kind: kind.to_string(),
            status: "ok".to_string(),
            reference_order: Some(sys.reference().order()),
            members: sys
                .members()
                .iter()
                .map(|m| MemberRow {
                    label: m.label(),
                    indices: m.indices().to_string(),
                    quotient_order: m.quotient().order(),
                })
                .collect(),
            verified: Some(sys.verify()),
            warnings: sys.warnings().to_vec(),
        },
        Err(e) => SystemReport {
            kind: kind.to_string(),
            status: format!("skipped: {e}"),
            reference_order: None,
            members: Vec::new(),
            verified: None,
            warnings: Vec::new(),
        },
    }
}

#[derive(Serialize)]
pub struct ConstructReport {
    pub schema: u32,
    pub command: String,
    pub kind: String,
    pub subject: SubjectEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elements_note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub round_trip: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub round_trip_note: Option<String>,
    #[serde(flatten)]
    pub body: AnalysisBody,
}

impl ConstructReport {
    pub fn element_listing(u: &ProductSubgroup) -> (Option<Vec<Vec<String>>>, Option<String>) {
        listing(u, u.elements())
    }
}

#[derive(Serialize)]
pub struct ImageEcho {
    pub ambient: String,
    pub factors: Vec<FactorEcho>,
    pub order: usize,
    pub subdirect: bool,
}

impl ImageEcho {
    pub fn new(u: &ProductSubgroup) -> ImageEcho {
        ImageEcho {
            ambient: u.ambient().label().to_string(),
            factors: u
                .ambient()
                .factors()
                .iter()
                .map(|f| FactorEcho {
                    label: f.label().to_string(),
                    order: f.order(),
                })
                .collect(),
            order: u.order(),
            subdirect: u.is_subdirect(),
        }
    }
}

#[derive(Serialize)]
pub struct HomRow {
    pub name: String,
    pub domain: String,
    pub codomain: String,
    pub kernel_order: usize,
}

#[derive(Serialize)]
pub struct IdentityRow {
    pub identity: String,
    pub holds: bool,
}

#[derive(Serialize)]
pub struct PresentReport {
    pub schema: u32,
    pub command: String,
    pub name: String,
    pub declaration: String,
    pub source: FactorEcho,
    pub maps: Vec<HomRow>,
    pub notes: Vec<String>,
    pub terse: bool,
    pub joint_kernel_order: usize,
    pub image: ImageEcho,
    pub identities: Vec<IdentityRow>,
    pub identities_hold: bool,
    pub smashed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_smashed: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_note: Option<String>,
    pub cohesive: DecompReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pullback_round_trip: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pullback_note: Option<String>,
}

#[derive(Serialize)]
pub struct SuiteRow {
    pub suite: String,
    pub checked: usize,
    pub skipped: usize,
    pub failed: usize,
    pub witnesses: Vec<String>,
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub command: String,
    pub scope: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    pub subjects: usize,
    pub presentations: usize,
    pub notes: Vec<String>,
    pub suites: Vec<SuiteRow>,
    pub ok: bool,
}

#[derive(Serialize)]
pub struct SubgroupRow {
    pub index: usize,
    pub order: usize,
    pub subdirect: bool,
    pub core_order: usize,
    pub touch_classes: usize,
    pub cohesive_blocks: String,
    pub smashed: bool,
}

#[derive(Serialize)]
pub struct EnumerateReport {
    pub schema: u32,
    pub command: String,
    pub product: String,
    pub product_order: usize,
    pub arity: usize,
    pub bound: usize,
    pub count: usize,
    pub subgroups: Vec<SubgroupRow>,
}

pub fn to_json<T: Serialize>(report: &T) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("reports serialise");
    text.push('\n');
    text
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn push_list(out: &mut String, label: &str, items: &[String]) {
    if items.is_empty() {
        return;
    }
    out.push_str(&format!("  {label}:\n"));
    for item in items {
        out.push_str(&format!("    {item}\n"));
    }
}

pub fn subject_text(out: &mut String, subject: &SubjectEcho) {
    out.push_str(&format!("  declaration: {}\n", subject.declaration));
    let factors = subject
        .factors
        .iter()
        .map(|f| format!("{} (order {})", f.label, f.order))
        .collect::<Vec<_>>()
        .join(" x ");
    out.push_str(&format!("  ambient: {factors}\n"));
    out.push_str(&format!(
        "  order {}, subdirect: {}\n",
        subject.order,
        yes_no(subject.subdirect)
    ));
    if !subject.trivial_projections.is_empty() {
        out.push_str(&format!(
            "  trivial projections at: {:?}\n",
            subject.trivial_projections
        ));
    }
    if !subject.trivial_supports.is_empty() {
        out.push_str(&format!(
            "  trivial supports at: {:?}\n",
            subject.trivial_supports
        ));
    }
}

pub fn body_text(out: &mut String, body: &AnalysisBody) {
    push_list(out, "warnings", &body.warnings);
    out.push_str("  family (projection kernel order, support order):\n");
    for row in &body.family {
        out.push_str(&format!(
            "    {}: kernel {}, support {}\n",
            row.indices, row.kernel_order, row.support_order
        ));
    }
    if let Some(note) = &body.family_note {
        out.push_str(&format!("    note: {note}\n"));
    }
    out.push_str(&format!("  core: order {}\n", body.core.order));
    if let Some(elements) = &body.core.elements {
        for e in elements {
            out.push_str(&format!("    [{}]\n", e.join(", ")));
        }
    }
    if let Some(note) = &body.core.elements_note {
        out.push_str(&format!("    {note}\n"));
    }
    out.push_str(&format!("  touch classes: {}\n", body.touch_classes));
    decomp_text(out, "connected", &body.connected);
    decomp_text(out, "cohesive", &body.cohesive);
    out.push_str(&format!("  smashed: {}\n", yes_no(body.smashed)));
    for row in &body.weakly_smashed {
        let warn = row
            .warning
            .as_deref()
            .map(|w| format!(" ({w})"))
            .unwrap_or_default();
        out.push_str(&format!(
            "  weakly smashed, s={}: {}{warn}\n",
            row.s,
            yes_no(row.holds)
        ));
    }
    if let Some(split) = &body.split {
        out.push_str(&format!(
            "  split at {}: {} -> {} ({} cosets), verified: {}, reconstructed: {}\n",
            split.indices,
            split.source.label,
            split.target.label,
            split.map.len(),
            yes_no(split.verified),
            yes_no(split.reconstructed)
        ));
        for row in &split.map {
            out.push_str(&format!("    {} -> {}\n", row.from, row.to));
        }
        out.push_str(&format!(
            "    prolongation quotient order: {}\n",
            split.prolongation_order
        ));
    }
    if let Some(systems) = &body.systems {
        for sys in systems {
            system_text(out, sys);
        }
    }
}

fn decomp_text(out: &mut String, kind: &str, d: &DecompReport) {
    let blocks = d
        .blocks
        .iter()
        .map(|b| format!("{} (order {})", b.indices, b.order))
        .collect::<Vec<_>>()
        .join(", ");
    out.push_str(&format!(
        "  {kind} blocks: {blocks}; complete: {}\n",
        yes_no(d.complete)
    ));
}

fn system_text(out: &mut String, sys: &SystemReport) {
    match sys.verified {
        Some(v) => {
            out.push_str(&format!(
                "  {} system: reference order {}, verified: {}\n",
                sys.kind,
                sys.reference_order.unwrap_or(0),
                yes_no(v)
            ));
            for m in &sys.members {
                out.push_str(&format!(
                    "    {} at {}: quotient order {}\n",
                    m.label, m.indices, m.quotient_order
                ));
            }
            for w in &sys.warnings {
                out.push_str(&format!("    warning: {w}\n"));
            }
        }
        None => out.push_str(&format!("  {} system: {}\n", sys.kind, sys.status)),
    }
}

pub fn analyze_text(report: &AnalyzeReport) -> String {
    let mut out = format!("analyze {}\n", report.subject.name);
    subject_text(&mut out, &report.subject);
    body_text(&mut out, &report.body);
    out
}

pub fn construct_text(report: &ConstructReport) -> String {
    let mut out = format!("construct {} ({})\n", report.subject.name, report.kind);
    subject_text(&mut out, &report.subject);
    if let Some(elements) = &report.elements {
        out.push_str("  elements:\n");
        for e in elements {
            out.push_str(&format!("    [{}]\n", e.join(", ")));
        }
    }
    if let Some(note) = &report.elements_note {
        out.push_str(&format!("  elements: {note}\n"));
    }
    match (report.round_trip, &report.round_trip_note) {
        (Some(ok), _) => out.push_str(&format!("  round trip: {}\n", yes_no(ok))),
        (None, Some(note)) => out.push_str(&format!("  round trip: {note}\n")),
        (None, None) => {}
    }
    body_text(&mut out, &report.body);
    out
}

pub fn present_text(report: &PresentReport) -> String {
    let mut out = format!("present {}\n", report.name);
    out.push_str(&format!("  declaration: {}\n", report.declaration));
    out.push_str(&format!(
        "  source: {} (order {})\n",
        report.source.label, report.source.order
    ));
    for m in &report.maps {
        out.push_str(&format!(
            "  map {}: {} -> {}, kernel order {}\n",
            m.name, m.domain, m.codomain, m.kernel_order
        ));
    }
    push_list(&mut out, "notes", &report.notes);
    out.push_str(&format!(
        "  terse: {}, joint kernel order: {}\n",
        yes_no(report.terse),
        report.joint_kernel_order
    ));
    out.push_str(&format!(
        "  image: order {} in {}, subdirect: {}\n",
        report.image.order,
        report.image.ambient,
        yes_no(report.image.subdirect)
    ));
    out.push_str("  kernel identities:\n");
    for row in &report.identities {
        out.push_str(&format!(
            "    [{}] {}\n",
            if row.holds { "ok" } else { "FAIL" },
            row.identity
        ));
    }
    out.push_str(&format!(
        "  all identities hold: {}\n",
        yes_no(report.identities_hold)
    ));
    out.push_str(&format!("  smashed: {}\n", yes_no(report.smashed)));
    match (report.kernel_smashed, &report.kernel_note) {
        (Some(v), _) => out.push_str(&format!("  smashed by kernel criterion: {}\n", yes_no(v))),
        (None, Some(note)) => out.push_str(&format!("  smashed by kernel criterion: {note}\n")),
        (None, None) => {}
    }
    decomp_text(&mut out, "cohesive", &report.cohesive);
    match (report.pullback_round_trip, &report.pullback_note) {
        (Some(v), _) => out.push_str(&format!("  pullback round trip: {}\n", yes_no(v))),
        (None, Some(note)) => out.push_str(&format!("  pullback round trip: {note}\n")),
        (None, None) => {}
    }
    out
}

pub fn verify_text(report: &VerifyReport) -> String {
    let mut out = format!("verify {}\n", report.scope);
    if let Some(bound) = report.bound {
        out.push_str(&format!("  order bound: {bound}\n"));
    }
    out.push_str(&format!(
        "  subjects: {}, presentations: {}\n",
        report.subjects, report.presentations
    ));
    push_list(&mut out, "notes", &report.notes);
    for row in &report.suites {
        let status = if row.failed == 0 { "pass" } else { "FAIL" };
        out.push_str(&format!(
            "  {}: {} checked, {} skipped, {} failed  [{status}]\n",
            row.suite, row.checked, row.skipped, row.failed
        ));
        for w in &row.witnesses {
            out.push_str(&format!("    witness: {w}\n"));
        }
    }
    out.push_str(&format!(
        "result: {}\n",
        if report.ok { "pass" } else { "FAIL" }
    ));
    out
}

pub fn enumerate_text(report: &EnumerateReport) -> String {
    let mut out = format!(
        "enumerate {} (order {}, {} factors, bound {})\n",
        report.product, report.product_order, report.arity, report.bound
    );
    out.push_str(&format!("  subgroups: {}\n", report.count));
    for row in &report.subgroups {
        out.push_str(&format!(
            "  #{}: order {}, subdirect: {}, core {}, classes {}, blocks {}, smashed: {}\n",
            row.index,
            row.order,
            yes_no(row.subdirect),
            row.core_order,
            row.touch_classes,
            row.cohesive_blocks,
            yes_no(row.smashed)
        ));
    }
    out
}
