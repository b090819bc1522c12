//! Instance and result files: strict JSON schemas, CSV point clouds,
//! canonical deterministic emission, and independent witness verification.
//!
//! Rationals travel as JSON integers or "num/den" strings; floats are
//! rejected so results stay exact across round trips.

use crate::depth::{
    crossing_distance, flats_crossdist, flats_line2, flats_line3, flats_tukey2,
    regression_depth_line2, regression_depth_line3, tukey_depth2, AffineFlatSpec, DepthReport,
    PrimalHyperplane, PrimalWitness,
};
use crate::error::Error;
use crate::projective::{ArrangementFunctional, HomogeneousPoint, ProjectiveFlat};
use crate::rat::{self, Rat};
use crate::reduce::{dual_of_point, functional_of_affine_hyperplane, Witness};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde_json::{Map, Value};

#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct SchemaError(pub String);

fn err<T>(msg: impl Into<String>) -> Result<T, SchemaError> {
    Err(SchemaError(msg.into()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceData {
    Points(Vec<Vec<Rat>>),
    Hyperplanes(Vec<(Vec<Rat>, Rat)>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFile {
    pub dimension: usize,
    pub data: InstanceData,
    pub query: Option<QuerySpec>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuerySpec {
    DepthLine3 {
        line: AffineFlatSpec,
    },
    DepthLine2 {
        line: AffineFlatSpec,
    },
    Tukey2 {
        at: Vec<Rat>,
    },
    CrossDist {
        flat_a: AffineFlatSpec,
        flat_b: AffineFlatSpec,
    },
}

impl QuerySpec {
    pub fn kind(&self) -> &'static str {
        match self {
            QuerySpec::DepthLine3 { .. } => "depth-line3",
            QuerySpec::DepthLine2 { .. } => "depth-line2",
            QuerySpec::Tukey2 { .. } => "tukey2",
            QuerySpec::CrossDist { .. } => "crossdist",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResultMeta {
    pub n: usize,
    pub d: usize,
    pub solver: String,
    pub elapsed_ms: u64,
    /// Which count the `distance` field reports: "closed" or "strict".
    pub headline: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResultFile {
    pub distance: u64,
    pub strict_min: u64,
    pub incident_count: u64,
    pub witness: Option<(Vec<Rat>, Vec<Rat>)>,
    pub primal: Option<PrimalWitness>,
    pub meta: ResultMeta,
}

pub fn result_file(report: &DepthReport, strict_headline: bool, elapsed_ms: u64) -> ResultFile {
    let witness = match &report.result.witness {
        Witness::Pair { u1, u2, .. } => Some((u1.coords().to_vec(), u2.coords().to_vec())),
        Witness::IntersectingFlats => None,
    };
    let distance = if strict_headline {
        report.result.strict_min
    } else {
        report.result.distance
    };
    ResultFile {
        distance,
        strict_min: report.result.strict_min,
        incident_count: report.result.incident_count,
        witness,
        primal: report.primal.clone(),
        meta: ResultMeta {
            n: report.n,
            d: report.d,
            solver: report.solver.name().to_string(),
            elapsed_ms,
            headline: if strict_headline { "strict" } else { "closed" }.to_string(),
        },
    }
}

// ---- parsing ----

fn object<'a>(v: &'a Value, ctx: &str) -> Result<&'a Map<String, Value>, SchemaError> {
    v.as_object()
        .map_or_else(|| err(format!("{ctx} must be a JSON object")), Ok)
}

fn check_fields(obj: &Map<String, Value>, allowed: &[&str], ctx: &str) -> Result<(), SchemaError> {
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            return err(format!("unknown field \"{key}\" in {ctx}"));
        }
    }
    Ok(())
}

fn required<'a>(
    obj: &'a Map<String, Value>,
    key: &str,
    ctx: &str,
) -> Result<&'a Value, SchemaError> {
    obj.get(key)
        .map_or_else(|| err(format!("missing field \"{key}\" in {ctx}")), Ok)
}

fn parse_rat(v: &Value, ctx: &str) -> Result<Rat, SchemaError> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rat::from_integer(BigInt::from(i)))
            } else if let Some(u) = n.as_u64() {
                Ok(Rat::from_integer(BigInt::from(u)))
            } else {
                err(format!(
                    "{ctx}: non-integer number; write rationals as \"num/den\" strings"
                ))
            }
        }
        Value::String(s) => rat::parse(s).map_err(|e| SchemaError(format!("{ctx}: {e}"))),
        _ => err(format!("{ctx}: expected an integer or \"num/den\" string")),
    }
}

fn parse_rat_vec(v: &Value, ctx: &str) -> Result<Vec<Rat>, SchemaError> {
    let arr = v
        .as_array()
        .ok_or_else(|| SchemaError(format!("{ctx} must be an array")))?;
    arr.iter()
        .enumerate()
        .map(|(i, x)| parse_rat(x, &format!("{ctx}[{i}]")))
        .collect()
}

fn parse_vector_list(v: &Value, arity: usize, ctx: &str) -> Result<Vec<Vec<Rat>>, SchemaError> {
    let arr = v
        .as_array()
        .ok_or_else(|| SchemaError(format!("{ctx} must be an array")))?;
    arr.iter()
        .enumerate()
        .map(|(i, row)| {
            let item = format!("{ctx}[{i}]");
            let coords = parse_rat_vec(row, &item)?;
            if coords.len() != arity {
                return err(format!(
                    "{item} has {} coordinates, expected {arity}",
                    coords.len()
                ));
            }
            Ok(coords)
        })
        .collect()
}

fn parse_flat_spec(v: &Value, dim: usize, ctx: &str) -> Result<AffineFlatSpec, SchemaError> {
    let obj = object(v, ctx)?;
    if obj.contains_key("points") {
        check_fields(obj, &["points"], ctx)?;
        let points =
            parse_vector_list(required(obj, "points", ctx)?, dim, &format!("{ctx}.points"))?;
        if points.is_empty() || points.len() > 2 {
            return err(format!(
                "{ctx}.points needs one or two points, got {}",
                points.len()
            ));
        }
        Ok(AffineFlatSpec::Points(points))
    } else if obj.contains_key("homogeneous") {
        check_fields(obj, &["homogeneous"], ctx)?;
        let vs = parse_vector_list(
            required(obj, "homogeneous", ctx)?,
            dim + 1,
            &format!("{ctx}.homogeneous"),
        )?;
        if vs.is_empty() || vs.len() > 2 {
            return err(format!(
                "{ctx}.homogeneous needs one or two vectors, got {}",
                vs.len()
            ));
        }
        Ok(AffineFlatSpec::Homogeneous(vs))
    } else if obj.contains_key("point") || obj.contains_key("direction") {
        check_fields(obj, &["point", "direction"], ctx)?;
        let point = parse_rat_vec(required(obj, "point", ctx)?, &format!("{ctx}.point"))?;
        let direction = parse_rat_vec(
            required(obj, "direction", ctx)?,
            &format!("{ctx}.direction"),
        )?;
        for (name, v) in [("point", &point), ("direction", &direction)] {
            if v.len() != dim {
                return err(format!(
                    "{ctx}.{name} has {} coordinates, expected {dim}",
                    v.len()
                ));
            }
        }
        Ok(AffineFlatSpec::PointDirection { point, direction })
    } else {
        err(format!(
            "{ctx} needs \"points\", \"point\" with \"direction\", or \"homogeneous\""
        ))
    }
}

pub fn parse_query(v: &Value, dim: usize) -> Result<QuerySpec, SchemaError> {
    let ctx = "query";
    let obj = object(v, ctx)?;
    let kind = required(obj, "kind", ctx)?
        .as_str()
        .ok_or_else(|| SchemaError("query.kind must be a string".into()))?;
    match kind {
        "depth-line3" | "depth-line2" => {
            check_fields(obj, &["kind", "line"], ctx)?;
            let line = parse_flat_spec(required(obj, "line", ctx)?, dim, "query.line")?;
            Ok(if kind == "depth-line3" {
                QuerySpec::DepthLine3 { line }
            } else {
                QuerySpec::DepthLine2 { line }
            })
        }
        "tukey2" => {
            check_fields(obj, &["kind", "at"], ctx)?;
            let at = parse_rat_vec(required(obj, "at", ctx)?, "query.at")?;
            if at.len() != dim {
                return err(format!(
                    "query.at has {} coordinates, expected {dim}",
                    at.len()
                ));
            }
            Ok(QuerySpec::Tukey2 { at })
        }
        "crossdist" => {
            check_fields(obj, &["kind", "flat_a", "flat_b"], ctx)?;
            Ok(QuerySpec::CrossDist {
                flat_a: parse_flat_spec(required(obj, "flat_a", ctx)?, dim, "query.flat_a")?,
                flat_b: parse_flat_spec(required(obj, "flat_b", ctx)?, dim, "query.flat_b")?,
            })
        }
        other => err(format!("unknown query kind \"{other}\"")),
    }
}

pub fn parse_instance_json(text: &str) -> Result<InstanceFile, SchemaError> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| SchemaError(format!("malformed JSON: {e}")))?;
    let obj = object(&v, "instance")?;
    check_fields(
        obj,
        &["dimension", "points", "hyperplanes", "query"],
        "instance",
    )?;
    let dim = required(obj, "dimension", "instance")?
        .as_u64()
        .filter(|d| *d >= 1)
        .ok_or_else(|| SchemaError("instance.dimension must be a positive integer".into()))?
        as usize;
    let data = match (obj.get("points"), obj.get("hyperplanes")) {
        (Some(_), Some(_)) => {
            return err("instance has both \"points\" and \"hyperplanes\"; give exactly one")
        }
        (None, None) => return err("instance needs \"points\" or \"hyperplanes\""),
        (Some(p), None) => InstanceData::Points(parse_vector_list(p, dim, "instance.points")?),
        (None, Some(h)) => {
            let arr = h
                .as_array()
                .ok_or_else(|| SchemaError("instance.hyperplanes must be an array".into()))?;
            let planes = arr
                .iter()
                .enumerate()
                .map(|(i, item)| {
                    let ctx = format!("instance.hyperplanes[{i}]");
                    let hobj = object(item, &ctx)?;
                    check_fields(hobj, &["coeffs", "rhs"], &ctx)?;
                    let coeffs =
                        parse_rat_vec(required(hobj, "coeffs", &ctx)?, &format!("{ctx}.coeffs"))?;
                    if coeffs.len() != dim {
                        return err(format!(
                            "{ctx}.coeffs has {} coordinates, expected {dim}",
                            coeffs.len()
                        ));
                    }
                    let rhs = parse_rat(required(hobj, "rhs", &ctx)?, &format!("{ctx}.rhs"))?;
                    Ok((coeffs, rhs))
                })
                .collect::<Result<Vec<_>, SchemaError>>()?;
            InstanceData::Hyperplanes(planes)
        }
    };
    let query = obj.get("query").map(|q| parse_query(q, dim)).transpose()?;
    Ok(InstanceFile {
        dimension: dim,
        data,
        query,
    })
}

/// CSV point cloud: one point per row, comma-separated integers or
/// "num/den" rationals. The dimension is the (consistent) row arity.
pub fn parse_points_csv(text: &str) -> Result<InstanceFile, SchemaError> {
    let mut points: Vec<Vec<Rat>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|tok| {
                rat::parse(tok.trim())
                    .map_err(|e| SchemaError(format!("csv line {}: {e}", lineno + 1)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(first) = points.first() {
            if row.len() != first.len() {
                return err(format!(
                    "csv line {} has {} fields, expected {}",
                    lineno + 1,
                    row.len(),
                    first.len()
                ));
            }
        }
        points.push(row);
    }
    match points.first().map(Vec::len) {
        None => err("csv input has no data rows"),
        Some(dim) => Ok(InstanceFile {
            dimension: dim,
            data: InstanceData::Points(points),
            query: None,
        }),
    }
}

/// Sniffs the format: JSON when the first non-space byte is '{', CSV otherwise.
pub fn parse_instance(text: &str) -> Result<InstanceFile, SchemaError> {
    if text.trim_start().starts_with('{') {
        parse_instance_json(text)
    } else {
        parse_points_csv(text)
    }
}

// ---- emission ----

fn rat_value(r: &Rat) -> Value {
    if r.is_integer() {
        if let Some(i) = r.numer().to_i64() {
            return Value::from(i);
        }
    }
    Value::String(rat::format(r))
}

fn rat_vec_value(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat_value).collect())
}

fn vector_list_value(vs: &[Vec<Rat>]) -> Value {
    Value::Array(vs.iter().map(|v| rat_vec_value(v)).collect())
}

fn flat_spec_value(f: &AffineFlatSpec) -> Value {
    let mut m = Map::new();
    match f {
        AffineFlatSpec::Points(ps) => {
            m.insert("points".into(), vector_list_value(ps));
        }
        AffineFlatSpec::PointDirection { point, direction } => {
            m.insert("point".into(), rat_vec_value(point));
            m.insert("direction".into(), rat_vec_value(direction));
        }
        AffineFlatSpec::Homogeneous(vs) => {
            m.insert("homogeneous".into(), vector_list_value(vs));
        }
    }
    Value::Object(m)
}

fn query_value(q: &QuerySpec) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), Value::from(q.kind()));
    match q {
        QuerySpec::DepthLine3 { line } | QuerySpec::DepthLine2 { line } => {
            m.insert("line".into(), flat_spec_value(line));
        }
        QuerySpec::Tukey2 { at } => {
            m.insert("at".into(), rat_vec_value(at));
        }
        QuerySpec::CrossDist { flat_a, flat_b } => {
            m.insert("flat_a".into(), flat_spec_value(flat_a));
            m.insert("flat_b".into(), flat_spec_value(flat_b));
        }
    }
    Value::Object(m)
}

pub fn instance_to_json(inst: &InstanceFile) -> String {
    let mut m = Map::new();
    m.insert("dimension".into(), Value::from(inst.dimension as u64));
    match &inst.data {
        InstanceData::Points(ps) => {
            m.insert("points".into(), vector_list_value(ps));
        }
        InstanceData::Hyperplanes(hs) => {
            let arr = hs
                .iter()
                .map(|(coeffs, rhs)| {
                    let mut h = Map::new();
                    h.insert("coeffs".into(), rat_vec_value(coeffs));
                    h.insert("rhs".into(), rat_value(rhs));
                    Value::Object(h)
                })
                .collect();
            m.insert("hyperplanes".into(), Value::Array(arr));
        }
    }
    if let Some(q) = &inst.query {
        m.insert("query".into(), query_value(q));
    }
    let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("valid JSON tree");
    s.push('\n');
    s
}

fn hyperplane_value(h: &PrimalHyperplane) -> Value {
    let mut m = Map::new();
    m.insert("coeffs".into(), rat_vec_value(&h.coeffs));
    m.insert("is_at_infinity".into(), Value::from(h.at_infinity));
    m.insert("rhs".into(), rat_value(&h.rhs));
    Value::Object(m)
}

pub fn result_to_json(r: &ResultFile) -> String {
    let mut m = Map::new();
    m.insert("distance".into(), Value::from(r.distance));
    m.insert("strict_min".into(), Value::from(r.strict_min));
    m.insert("incident_count".into(), Value::from(r.incident_count));
    m.insert(
        "witness".into(),
        match &r.witness {
            None => Value::Null,
            Some((u1, u2)) => {
                let mut w = Map::new();
                w.insert("u1".into(), rat_vec_value(u1));
                w.insert("u2".into(), rat_vec_value(u2));
                Value::Object(w)
            }
        },
    );
    m.insert(
        "primal_witness".into(),
        match &r.primal {
            None => Value::Null,
            Some(p) => {
                let mut w = Map::new();
                w.insert("bound_a".into(), hyperplane_value(&p.bound_a));
                w.insert("bound_b".into(), hyperplane_value(&p.bound_b));
                w.insert("count".into(), Value::from(p.count));
                Value::Object(w)
            }
        },
    );
    let mut meta = Map::new();
    meta.insert("d".into(), Value::from(r.meta.d as u64));
    meta.insert("elapsed_ms".into(), Value::from(r.meta.elapsed_ms));
    meta.insert("headline".into(), Value::from(r.meta.headline.as_str()));
    meta.insert("n".into(), Value::from(r.meta.n as u64));
    meta.insert("solver".into(), Value::from(r.meta.solver.as_str()));
    m.insert("meta".into(), Value::Object(meta));
    let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("valid JSON tree");
    s.push('\n');
    s
}

fn parse_u64(v: &Value, ctx: &str) -> Result<u64, SchemaError> {
    v.as_u64()
        .ok_or_else(|| SchemaError(format!("{ctx} must be a nonnegative integer")))
}

fn parse_primal_hyperplane(v: &Value, ctx: &str) -> Result<PrimalHyperplane, SchemaError> {
    let obj = object(v, ctx)?;
    check_fields(obj, &["coeffs", "is_at_infinity", "rhs"], ctx)?;
    let coeffs = parse_rat_vec(required(obj, "coeffs", ctx)?, &format!("{ctx}.coeffs"))?;
    let rhs = parse_rat(required(obj, "rhs", ctx)?, &format!("{ctx}.rhs"))?;
    let at_infinity = required(obj, "is_at_infinity", ctx)?
        .as_bool()
        .ok_or_else(|| SchemaError(format!("{ctx}.is_at_infinity must be a boolean")))?;
    Ok(PrimalHyperplane {
        coeffs,
        rhs,
        at_infinity,
    })
}

pub fn parse_result_json(text: &str) -> Result<ResultFile, SchemaError> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| SchemaError(format!("malformed JSON: {e}")))?;
    let obj = object(&v, "result")?;
    check_fields(
        obj,
        &[
            "distance",
            "strict_min",
            "incident_count",
            "witness",
            "primal_witness",
            "meta",
        ],
        "result",
    )?;
    let witness = match required(obj, "witness", "result")? {
        Value::Null => None,
        w => {
            let wobj = object(w, "result.witness")?;
            check_fields(wobj, &["u1", "u2"], "result.witness")?;
            Some((
                parse_rat_vec(required(wobj, "u1", "result.witness")?, "result.witness.u1")?,
                parse_rat_vec(required(wobj, "u2", "result.witness")?, "result.witness.u2")?,
            ))
        }
    };
    let primal = match required(obj, "primal_witness", "result")? {
        Value::Null => None,
        p => {
            let ctx = "result.primal_witness";
            let pobj = object(p, ctx)?;
            check_fields(pobj, &["bound_a", "bound_b", "count"], ctx)?;
            Some(PrimalWitness {
                bound_a: parse_primal_hyperplane(
                    required(pobj, "bound_a", ctx)?,
                    &format!("{ctx}.bound_a"),
                )?,
                bound_b: parse_primal_hyperplane(
                    required(pobj, "bound_b", ctx)?,
                    &format!("{ctx}.bound_b"),
                )?,
                count: parse_u64(required(pobj, "count", ctx)?, &format!("{ctx}.count"))?,
            })
        }
    };
    let mobj = object(required(obj, "meta", "result")?, "result.meta")?;
    check_fields(
        mobj,
        &["n", "d", "solver", "elapsed_ms", "headline"],
        "result.meta",
    )?;
    let meta = ResultMeta {
        n: parse_u64(required(mobj, "n", "result.meta")?, "result.meta.n")? as usize,
        d: parse_u64(required(mobj, "d", "result.meta")?, "result.meta.d")? as usize,
        solver: required(mobj, "solver", "result.meta")?
            .as_str()
            .ok_or_else(|| SchemaError("result.meta.solver must be a string".into()))?
            .to_string(),
        elapsed_ms: parse_u64(
            required(mobj, "elapsed_ms", "result.meta")?,
            "result.meta.elapsed_ms",
        )?,
        headline: required(mobj, "headline", "result.meta")?
            .as_str()
            .ok_or_else(|| SchemaError("result.meta.headline must be a string".into()))?
            .to_string(),
    };
    Ok(ResultFile {
        distance: parse_u64(required(obj, "distance", "result")?, "result.distance")?,
        strict_min: parse_u64(required(obj, "strict_min", "result")?, "result.strict_min")?,
        incident_count: parse_u64(
            required(obj, "incident_count", "result")?,
            "result.incident_count",
        )?,
        witness,
        primal,
        meta,
    })
}

// ---- query dispatch ----

#[derive(Debug)]
pub enum AnswerError {
    /// Instance and query disagree structurally; exit code 2.
    Schema(String),
    /// The query asks for a dimension or flat shape outside the supported
    /// range; exit code 4.
    Unsupported(String),
    Compute(Error),
}

impl std::fmt::Display for AnswerError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AnswerError::Schema(m) | AnswerError::Unsupported(m) => f.write_str(m),
            AnswerError::Compute(e) => write!(f, "{e}"),
        }
    }
}

impl AnswerError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AnswerError::Schema(_) => 2,
            AnswerError::Unsupported(_) => 4,
            AnswerError::Compute(Error::UnsupportedFlatDimension { .. }) => 4,
            AnswerError::Compute(_) => 2,
        }
    }
}

impl From<Error> for AnswerError {
    fn from(e: Error) -> Self {
        AnswerError::Compute(e)
    }
}

fn points_data<'a>(inst: &'a InstanceFile, kind: &str) -> Result<&'a [Vec<Rat>], AnswerError> {
    match &inst.data {
        InstanceData::Points(ps) => Ok(ps),
        InstanceData::Hyperplanes(_) => Err(AnswerError::Schema(format!(
            "{kind} needs a \"points\" instance"
        ))),
    }
}

fn hyperplanes_data<'a>(
    inst: &'a InstanceFile,
    kind: &str,
) -> Result<&'a [(Vec<Rat>, Rat)], AnswerError> {
    match &inst.data {
        InstanceData::Hyperplanes(hs) => Ok(hs),
        InstanceData::Points(_) => Err(AnswerError::Schema(format!(
            "{kind} needs a \"hyperplanes\" instance"
        ))),
    }
}

fn expect_dim(inst: &InstanceFile, want: usize, kind: &str) -> Result<(), AnswerError> {
    if inst.dimension == want {
        Ok(())
    } else {
        Err(AnswerError::Unsupported(format!(
            "{kind} works in dimension {want}, instance has dimension {}",
            inst.dimension
        )))
    }
}

fn check_query_shape(inst: &InstanceFile, query: &QuerySpec) -> Result<(), AnswerError> {
    match query {
        QuerySpec::DepthLine3 { .. } => {
            expect_dim(inst, 3, "depth-line3")?;
            points_data(inst, "depth-line3").map(drop)
        }
        QuerySpec::DepthLine2 { .. } => {
            expect_dim(inst, 2, "depth-line2")?;
            points_data(inst, "depth-line2").map(drop)
        }
        QuerySpec::Tukey2 { .. } => {
            expect_dim(inst, 2, "tukey2")?;
            points_data(inst, "tukey2").map(drop)
        }
        QuerySpec::CrossDist { .. } => hyperplanes_data(inst, "crossdist").map(drop),
    }
}

pub fn answer(inst: &InstanceFile, query: &QuerySpec) -> Result<DepthReport, AnswerError> {
    check_query_shape(inst, query)?;
    match query {
        QuerySpec::DepthLine3 { line } => Ok(regression_depth_line3(
            points_data(inst, "depth-line3")?,
            line,
        )?),
        QuerySpec::DepthLine2 { line } => Ok(regression_depth_line2(
            points_data(inst, "depth-line2")?,
            line,
        )?),
        QuerySpec::Tukey2 { at } => Ok(tukey_depth2(points_data(inst, "tukey2")?, at)?),
        QuerySpec::CrossDist { flat_a, flat_b } => Ok(crossing_distance(
            hyperplanes_data(inst, "crossdist")?,
            flat_a,
            flat_b,
        )?),
    }
}

/// Same dispatch as [`answer`], but through the exhaustive reference solver.
pub fn answer_oracle(
    inst: &InstanceFile,
    query: &QuerySpec,
    jobs: usize,
) -> Result<DepthReport, AnswerError> {
    check_query_shape(inst, query)?;
    let functionals = instance_functionals(inst).map_err(AnswerError::Schema)?;
    let (f1, f2) = query_flats(inst, query).map_err(AnswerError::Schema)?;
    Ok(crate::depth::run_engine(
        &functionals,
        &f1,
        &f2,
        crate::depth::SolveEngine::Brute { jobs: jobs.max(1) },
    )?)
}

// ---- witness verification ----

fn instance_functionals(inst: &InstanceFile) -> Result<Vec<ArrangementFunctional>, String> {
    match &inst.data {
        InstanceData::Points(ps) => Ok(ps.iter().map(|p| dual_of_point(p)).collect()),
        InstanceData::Hyperplanes(hs) => hs
            .iter()
            .map(|(a, b)| functional_of_affine_hyperplane(a, b).map_err(|e| e.to_string()))
            .collect(),
    }
}

fn query_flats(
    inst: &InstanceFile,
    query: &QuerySpec,
) -> Result<(ProjectiveFlat, ProjectiveFlat), String> {
    let flats = match query {
        QuerySpec::DepthLine3 { line } => flats_line3(line),
        QuerySpec::DepthLine2 { line } => flats_line2(line),
        QuerySpec::Tukey2 { at } => flats_tukey2(at),
        QuerySpec::CrossDist { flat_a, flat_b } => flats_crossdist(flat_a, flat_b, inst.dimension),
    };
    flats.map_err(|e| format!("query does not define valid flats: {e}"))
}

/// Recounts a result against its instance without rerunning any solver.
/// Checks witness membership in the query flats, recounts strict and
/// incident hyperplanes from scratch, and confirms the headline arithmetic
/// and the primal witness. Returns a description of the first mismatch.
pub fn verify_witness(
    inst: &InstanceFile,
    query: &QuerySpec,
    result: &ResultFile,
) -> Result<(), String> {
    let functionals = instance_functionals(inst)?;
    let (f1, f2) = query_flats(inst, query)?;
    let d = f1.ambient_dim();
    if result.meta.n != functionals.len() {
        return Err(format!(
            "meta.n is {}, instance has {} hyperplanes",
            result.meta.n,
            functionals.len()
        ));
    }
    if result.meta.d != d {
        return Err(format!(
            "meta.d is {}, query lives in dimension {d}",
            result.meta.d
        ));
    }
    let intersecting = f1
        .intersects(&f2)
        .map_err(|e| format!("query flats: {e}"))?;
    let Some((c1, c2)) = &result.witness else {
        if !intersecting {
            return Err("witness is null but the query flats do not intersect".into());
        }
        if result.distance != 0 || result.strict_min != 0 || result.incident_count != 0 {
            return Err("intersecting flats must report zero counts".into());
        }
        if result.primal.is_some() {
            return Err("intersecting flats must not carry a primal witness".into());
        }
        return Ok(());
    };
    if intersecting {
        return Err("witness present but the query flats intersect".into());
    }
    let u1 = HomogeneousPoint::new(c1.clone()).map_err(|e| format!("witness.u1: {e}"))?;
    let u2 = HomogeneousPoint::new(c2.clone()).map_err(|e| format!("witness.u2: {e}"))?;
    if c1.len() != d + 1 || c2.len() != d + 1 {
        return Err(format!("witness vectors must have {} coordinates", d + 1));
    }
    if !f1.contains(&u1) {
        return Err("witness.u1 does not lie on the first query flat".into());
    }
    if !f2.contains(&u2) {
        return Err("witness.u2 does not lie on the second query flat".into());
    }
    let mut strict = 0u64;
    let mut incident = 0u64;
    for h in &functionals {
        let zero_on = |f: &ProjectiveFlat| {
            f.basis()
                .iter()
                .all(|b| h.sign_of(b).expect("arity checked") == 0)
        };
        if zero_on(&f1) || zero_on(&f2) {
            incident += 1;
            continue;
        }
        let s1 = h.sign_of(&u1).map_err(|e| format!("witness.u1: {e}"))?;
        let s2 = h.sign_of(&u2).map_err(|e| format!("witness.u2: {e}"))?;
        if s1 * s2 == -1 {
            strict += 1;
        }
    }
    if strict != result.strict_min {
        return Err(format!(
            "recounted strict crossings {strict}, result claims {}",
            result.strict_min
        ));
    }
    if incident != result.incident_count {
        return Err(format!(
            "recounted incident hyperplanes {incident}, result claims {}",
            result.incident_count
        ));
    }
    let want_distance = match result.meta.headline.as_str() {
        "closed" => strict + incident,
        "strict" => strict,
        other => return Err(format!("unknown meta.headline \"{other}\"")),
    };
    if result.distance != want_distance {
        return Err(format!(
            "distance is {}, headline \"{}\" recount gives {want_distance}",
            result.distance, result.meta.headline
        ));
    }
    let Some(primal) = &result.primal else {
        return Err("result with a witness must carry a primal witness".into());
    };
    let polar_matches = |bound: &PrimalHyperplane, c: &[Rat]| {
        bound.coeffs == c[..d]
            && bound.rhs == -c[d].clone()
            && bound.at_infinity == c[..d].iter().all(Zero::is_zero)
    };
    if !polar_matches(&primal.bound_a, c1) {
        return Err("primal_witness.bound_a is not the polar of witness.u1".into());
    }
    if !polar_matches(&primal.bound_b, c2) {
        return Err("primal_witness.bound_b is not the polar of witness.u2".into());
    }
    if primal.count != strict {
        return Err(format!(
            "primal_witness.count is {}, strict recount gives {strict}",
            primal.count
        ));
    }
    Ok(())
}
