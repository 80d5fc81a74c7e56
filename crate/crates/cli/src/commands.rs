use grascurve_core::binform::split_cohomology;
use grascurve_core::curves::{AxisResult, CurveFamily, CurveJson};
use grascurve_core::ffenum::{enumerate_count, EnumObject, EnumSpec, Witness};
use grascurve_core::grassmann::pair_label;
use grascurve_core::interp::{vanishing_forms, FormSpace, Sampler};
use grascurve_core::linalg::Subspace;
use grascurve_core::poly::monomials;
use grascurve_core::sections::{
    conic_in_envelope, is_sigma22_plane, normal_bundle_splitting, plane_fiber, sigma31_planes_at, vertex_fiber,
    FiberReport, LineFlag, SectionModel,
};
use grascurve_core::{Field, PrimeField, Rationals};
use serde_json::{json, Value};

use crate::cli::{Command, CurveOp, EnumArgs, GlobalOpts, IdealOp, SectionOp};
use crate::error::{CliError, CliResult};
use crate::io;
use crate::verify;

/// Result of a command: a JSON value and whether every check passed.
pub struct Outcome {
    pub value: Value,
    pub ok: bool,
}

impl From<Value> for Outcome {
    fn from(value: Value) -> Self {
        Outcome { value, ok: true }
    }
}

pub fn run(cmd: &Command, g: &GlobalOpts) -> CliResult<Outcome> {
    match cmd {
        Command::Curve { op } => curve(op, g).map(Into::into),
        Command::Section { op } => section(op, g).map(Into::into),
        Command::Ideal { op } => ideal(op, g).map(Into::into),
        Command::Enum(a) => enumerate(a, g).map(Into::into),
        Command::Verify(a) => {
            if a.list {
                let list = verify::CHECKS
                    .iter()
                    .map(|c| json!({"id": c.id, "criterion": c.criterion, "description": c.description}))
                    .collect();
                return Ok(Value::Array(list).into());
            }
            let ids: Vec<&str> = if a.all {
                if !a.ids.is_empty() {
                    return Err(CliError::Usage("give check ids or --all, not both".into()));
                }
                verify::CHECKS.iter().map(|c| c.id).collect()
            } else if a.ids.is_empty() {
                return Err(CliError::Usage("verify needs check ids or --all".into()));
            } else {
                a.ids.iter().map(String::as_str).collect()
            };
            let ctx = verify::Ctx { seed: g.seed, budget: g.budget };
            let report = verify::run_checks(&ids, &ctx)?;
            let ok = report.all_passed();
            Ok(Outcome { value: serde_json::to_value(&report).expect("report serializes"), ok })
        }
    }
}

fn load_curve(path: &str) -> CliResult<CurveFamily<Rationals>> {
    let v = io::json_arg(path, "curve")?;
    let j: CurveJson = serde_json::from_value(v).map_err(|e| CliError::Input(format!("malformed curve: {e}")))?;
    Ok(CurveFamily::from_json(&Rationals, &j)?)
}

fn curve(op: &CurveOp, g: &GlobalOpts) -> CliResult<Value> {
    Ok(match op {
        CurveOp::Classify(a) => {
            let c = load_curve(&a.curve)?.classify()?;
            json!({"kind": c.kind, "split": [c.split.0, c.split.1], "degree": c.degree})
        }
        CurveOp::Vertex(a) => {
            let fam = load_curve(&a.curve)?;
            let kind = fam.classify()?.kind;
            json!({"kind": kind, "vertex": fam.vertex().map(|v| io::rows(&v))})
        }
        CurveOp::Envelope(a) => {
            let env = load_curve(&a.curve)?.envelope()?;
            json!({"dim": env.dim(), "envelope": io::rows(&env)})
        }
        CurveOp::Axis(a) => match load_curve(&a.curve)?.axis()? {
            AxisResult::AxisLine(l) => json!({"type": "AxisLine", "axis": io::rows(&l)}),
            AxisResult::ConeWithVertex(v) => json!({"type": "ConeWithVertex", "vertex": io::rows(&v)}),
        },
        CurveOp::Member(a) => {
            let fam = load_curve(&a.curve)?;
            let sec = io::load_section(&g.section)?;
            json!({"section": sec.name(), "member": fam.in_section(&sec)})
        }
    })
}

fn fiber_json<F: Field>(sec: &SectionModel<F>, r: &FiberReport<F>) -> Value {
    json!({
        "section": sec.name(),
        "k": r.k,
        "kind": r.interpretation,
        "dimension": r.interpretation.dimension(),
        "basis": io::rows(&r.basis),
    })
}

fn section(op: &SectionOp, g: &GlobalOpts) -> CliResult<Value> {
    let sec = io::load_section(&g.section)?;
    let sub = |arg: &str, dim: usize, what: &str| -> CliResult<Subspace<Rationals>> {
        io::subspace(&io::json_arg(arg, what)?, dim, what)
    };
    Ok(match op {
        SectionOp::FiberLines { point } => fiber_json(&sec, &vertex_fiber(&sub(point, 1, "point")?, &sec)?),
        SectionOp::PlaneFiber { plane } => fiber_json(&sec, &plane_fiber(&sub(plane, 3, "plane")?, &sec)?),
        SectionOp::Sigma31 { point } => fiber_json(&sec, &sigma31_planes_at(&sub(point, 1, "point")?, &sec)?),
        SectionOp::Sigma22 { plane } => {
            json!({"section": sec.name(), "sigma22": is_sigma22_plane(&sub(plane, 3, "plane")?, &sec)?})
        }
        SectionOp::Conic { space } => {
            let r = conic_in_envelope(&sub(space, 4, "space")?, &sec)?;
            let names: Vec<String> = (0..3).map(|i| format!("x{i}")).collect();
            json!({
                "section": sec.name(),
                "form": r.form.format(&names),
                "rank": r.rank,
                "solution_basis": r.solution_basis.format_rows(),
            })
        }
        SectionOp::Nbundle { vertex, plane } => {
            let z = LineFlag::new(sub(vertex, 1, "vertex")?, sub(plane, 3, "plane")?)?;
            let st = normal_bundle_splitting(&z, &sec)?;
            let (h0, h1) = split_cohomology(&st);
            json!({"section": sec.name(), "splitting": st.degrees(), "h0": h0, "h1": h1})
        }
    })
}

fn variable_names(locus: &str, nvars: usize) -> Vec<String> {
    match locus {
        "c0" => ["a0", "a1", "a4"].iter().map(|s| s.to_string()).collect(),
        "y3-vertex" => (0..nvars).map(|i| format!("a{i}")).collect(),
        _ => (0..nvars).map(pair_label).collect(),
    }
}

fn ideal(op: &IdealOp, g: &GlobalOpts) -> CliResult<Value> {
    let IdealOp::Interpolate { locus, degree, modulo_lower } = op;
    let s = Sampler::named(locus, g.seed)?;
    let n = s.nvars();
    let lower = if *modulo_lower && *degree > 1 {
        Some(vanishing_forms(&s, degree - 1, None)?.multiply_up(1)?)
    } else {
        None
    };
    let fs: FormSpace<Rationals> = vanishing_forms(&s, *degree, lower.as_ref())?;
    let names = variable_names(locus, n);
    let mono: Vec<String> = monomials(n, *degree)
        .iter()
        .map(|e| {
            let parts: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { names[i].clone() } else { format!("{}^{k}", names[i]) })
                .collect();
            if parts.is_empty() { "1".to_string() } else { parts.join("*") }
        })
        .collect();
    Ok(json!({
        "locus": locus,
        "degree": degree,
        "modulo_lower": modulo_lower,
        "seed": g.seed,
        "variables": names,
        "dim": fs.dim(),
        "forms": fs.forms().iter().map(|p| p.format(&names)).collect::<Vec<_>>(),
        "monomials": mono,
        "basis": io::rows(&fs.space),
    }))
}

fn witness_json(w: &Witness) -> Value {
    let fp = |s: &Subspace<PrimeField>| io::rows(s);
    match w {
        Witness::Flag { point, space } => json!({"point": fp(point), "space": fp(space)}),
        Witness::Subspace(s) => json!({"space": fp(s)}),
    }
}

fn enumerate(a: &EnumArgs, g: &GlobalOpts) -> CliResult<Value> {
    let sec = io::load_section(&g.section)?;
    let obj = EnumObject::parse(&a.object, a.k)?;
    let spec = EnumSpec::new(&sec, a.p, obj)?.with_budget(g.budget).with_witnesses(a.witnesses);
    let r = enumerate_count(&spec)?;
    let mut v = json!({"section": sec.name(), "p": a.p, "object": a.object, "count": r.count});
    if let EnumObject::Subspaces(k) = obj {
        v["k"] = json!(k);
    }
    if a.witnesses {
        v["witnesses"] = Value::Array(r.witnesses.iter().map(witness_json).collect());
    }
    Ok(v)
}
