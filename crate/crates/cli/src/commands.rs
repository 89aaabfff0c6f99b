use fwps_core::enumeration::{
    max_degree_over_partitions, verify_region_report, BoundStatus, EnumerationConfig, SharpnessStatus,
    DEFAULT_BUDGET,
};
use fwps_core::sylvester::{expected_product_class, ProductClass};
use fwps_core::ufp::a_of_q_paired;
use fwps_core::{
    a_of_q, attainers, check_product_inequality, degree_bound, enumerate_with, extremal_weights, q_of_a,
    syl_partition, verify_sharpness, LatticeSimplex, SylvesterSeq, UfPartition, WeightSystem,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::report::{count, int, ints, partition, partitions, rat, text, weights, Report, Status};
use crate::{BoundMode, Command};

type CmdResult = Result<Report, String>;

/// `--budget` wins over `FWPS_BUDGET`, which wins over the default.
pub fn resolve_budget(flag: Option<u64>, env: Option<String>) -> Result<u64, String> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match env {
        Some(s) => s
            .trim()
            .parse()
            .map_err(|_| format!("FWPS_BUDGET must be a non-negative integer, got {s:?}")),
        None => Ok(DEFAULT_BUDGET),
    }
}

fn parse_weights(s: &str) -> Result<WeightSystem, String> {
    s.parse().map_err(|e| format!("invalid --weights {s:?}: {e}"))
}

fn parse_parts(s: &str) -> Result<Vec<BigInt>, String> {
    s.trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split(',')
        .map(|t| t.trim().parse::<BigInt>().map_err(|_| format!("cannot parse {:?} as an integer", t.trim())))
        .collect()
}

fn parse_simplex(s: &str) -> Result<LatticeSimplex, String> {
    s.parse().map_err(|e| format!("invalid --vertices {s:?}: {e}"))
}

fn positive(name: &str, v: u64) -> Result<(), String> {
    if v == 0 {
        Err(format!("--{name} must be positive"))
    } else {
        Ok(())
    }
}

fn weight_system_text(q: &WeightSystem) -> String {
    format!("P{q}")
}

pub fn run(command: &Command, budget: u64) -> CmdResult {
    let config = EnumerationConfig { budget, ..Default::default() };
    match command {
        Command::Degree { weights: w, lambda } => degree(&w.weights, *lambda),
        Command::Index { weights: w } => {
            let q = parse_weights(&w.weights)?;
            let mut r = Report::new("index");
            r.input("weights", weights(&q));
            r.result("index", int(&q.index())).result("total_weight", int(&q.total_weight()));
            Ok(r)
        }
        Command::Reduce { weights: w } => {
            let q = parse_weights(&w.weights)?;
            let mut r = Report::new("reduce");
            r.input("weights", weights(&q));
            r.result("factor", int(&q.factor())).result("reduced", weights(&q.reduce()));
            Ok(r)
        }
        Command::WfCheck { weights: w } => {
            let q = parse_weights(&w.weights)?;
            let mut r = Report::new("wf-check");
            r.input("weights", weights(&q));
            r.result("well_formed", json!(q.is_well_formed())).result("reduced", json!(q.is_reduced()));
            Ok(r)
        }
        Command::UfpOfWs { weights: w } => {
            let q = parse_weights(&w.weights)?;
            let a = a_of_q(&q);
            let (_, paired) = a_of_q_paired(&q);
            let mut r = Report::new("ufp-of-ws");
            r.input("weights", weights(&q));
            r.result("partition", partition(&a))
                .result("paired", ints(&paired))
                .result("reduced", json!(a.is_reduced()))
                .result("well_formed", json!(a.is_well_formed()));
            Ok(r)
        }
        Command::WsOfUfp { iota, weights: parts } => {
            positive("iota", *iota)?;
            let raw = parse_parts(parts)?;
            let a = UfPartition::new(BigInt::from(*iota), raw.clone()).map_err(|e| e.to_string())?;
            let q = q_of_a(&a);
            let mut r = Report::new("ws-of-ufp");
            r.input("iota", count(*iota as usize)).input("parts", ints(&raw));
            r.result("partition", partition(&a))
                .result("weights", weights(&q))
                .result("total_weight", int(&a.total_weight()))
                .result("factor", int(&a.factor()))
                .result("reduced_partition", partition(&a.reduce()))
                .result("well_formed", json!(a.is_well_formed()));
            if !a.is_reduced() {
                r.warn("partition is not reduced; Q(A) corresponds to its reduction");
            }
            Ok(r)
        }
        Command::Sylvester { iota, length } => {
            positive("iota", *iota)?;
            let seq = SylvesterSeq::shared(*iota).map_err(|e| e.to_string())?;
            let s = seq.terms(*length);
            let t: Vec<BigInt> = (1..=*length).map(|k| seq.t(k)).collect();
            let mut r = Report::new("sylvester");
            r.input("iota", count(*iota as usize)).input("length", count(*length));
            r.result("s", ints(&s)).result("t", ints(&t));
            if *length >= 3 {
                let syl = syl_partition(*iota, *length).map_err(|e| e.to_string())?;
                r.result("syl_partition", partition(&syl));
            }
            Ok(r)
        }
        Command::Extremal { iota, dim } => extremal(*iota, *dim),
        Command::Bound { iota, dim } => bound(*iota, *dim),
        Command::Enumerate { iota, length } => enumerate_cmd(*iota, *length, &config),
        Command::VerifySharpness { iota, length } => sharpness(*iota, *length, &config),
        Command::VerifyBound { iota, dim, mode } => verify_bound(*iota, *dim, *mode, &config),
        Command::Simplex { weights: w } => {
            let q = parse_weights(&w.weights)?;
            let p = LatticeSimplex::from_weights(&q).map_err(|e| e.to_string())?;
            let mut r = Report::new("simplex");
            r.input("weights", weights(&q));
            r.result("vertices", Value::String(p.to_string()))
                .result("vertex_list", Value::Array(p.vertices().iter().map(|v| ints(v)).collect()));
            Ok(r)
        }
        Command::AnalyzeSimplex { vertices } => analyze(&vertices.vertices),
        Command::CheckVolumeFormula { vertices } => {
            let p = parse_simplex(&vertices.vertices)?;
            let report = p.check_volume_formula().map_err(|e| e.to_string())?;
            let mut r = Report::new("check-volume-formula");
            r.input("vertices", Value::String(p.to_string()));
            r.result("lhs", rat(&report.lhs))
                .result("rhs", rat(&report.rhs))
                .result("holds", json!(report.holds));
            r.status = if report.holds { Status::Matches } else { Status::Mismatch };
            if !p.has_primitive_vertices() {
                r.warn("vertices not primitive");
            }
            Ok(r)
        }
        Command::Lemma44Scan { iota, length } => lemma44(*iota, *length),
    }
}

fn degree(w: &str, lambda: u64) -> CmdResult {
    let q = parse_weights(w)?;
    positive("lambda", lambda)?;
    let lam = BigInt::from(lambda);
    let degree = q.degree(&lam).map_err(|e| e.to_string())?;
    let mut r = Report::new("degree");
    r.input("weights", weights(&q)).input("lambda", int(&lam));
    r.result("degree", rat(&degree))
        .result("index", int(&q.index()))
        .result("total_weight", int(&q.total_weight()))
        .result("factor", int(&q.factor()))
        .result("reduced", weights(&q.reduce()))
        .result("well_formed", json!(q.is_well_formed()));
    if !q.is_reduced() {
        r.warn("weights not reduced; the factor is folded into the degree");
    }
    Ok(r)
}

fn table_header(iota: u64, dim: usize) -> Result<String, String> {
    let bound = degree_bound(iota, dim).map_err(|e| e.to_string())?;
    let attained: Vec<String> = attainers(iota, dim)
        .map_err(|e| e.to_string())?
        .iter()
        .map(weight_system_text)
        .collect();
    Ok(format!(
        "d                   | {dim}\nι                   | {iota}\nbound on (-K_X)^d   | {}\nattained exactly by | {}\n",
        text(&rat(&bound)),
        attained.join(", ")
    ))
}

fn extremal(iota: u64, dim: usize) -> CmdResult {
    positive("iota", iota)?;
    let q = extremal_weights(iota, dim).map_err(|e| e.to_string())?;
    let bound = degree_bound(iota, dim).map_err(|e| e.to_string())?;
    let degree = q.degree(&BigInt::from(1)).map_err(|e| e.to_string())?;
    let p = LatticeSimplex::from_weights(&q).map_err(|e| e.to_string())?;
    let geometric = p.degree().map_err(|e| e.to_string())?;
    let geometric_index = p.gorenstein_index().map_err(|e| e.to_string())?;
    let mut r = Report::new("extremal");
    r.input("iota", count(iota as usize)).input("dim", count(dim));
    r.result("weights", weights(&q))
        .result("bound", rat(&bound))
        .result("degree", rat(&degree))
        .result("degree_geometric", rat(&geometric))
        .result("index", int(&q.index()))
        .result("gorenstein_index_geometric", int(&geometric_index))
        .result("partition", partition(&a_of_q(&q)));
    let ok = degree == bound && geometric == bound && q.index() == BigInt::from(iota) && geometric_index == q.index();
    r.status = if ok { Status::Matches } else { Status::Mismatch };
    r.text_header = Some(table_header(iota, dim)?);
    Ok(r)
}

fn bound(iota: u64, dim: usize) -> CmdResult {
    let bound = degree_bound(iota, dim).map_err(|e| e.to_string())?;
    let list = attainers(iota, dim).map_err(|e| e.to_string())?;
    let mut r = Report::new("bound");
    r.input("iota", count(iota as usize)).input("dim", count(dim));
    r.result("bound", rat(&bound))
        .result("attainers", Value::Array(list.iter().map(weights).collect()));
    r.text_header = Some(table_header(iota, dim)?);
    Ok(r)
}

fn enumerate_cmd(iota: u64, length: usize, config: &EnumerationConfig) -> CmdResult {
    let rep = enumerate_with(iota, length, config).map_err(|e| e.to_string())?;
    let mut r = Report::new("enumerate");
    r.input("iota", count(iota as usize)).input("length", count(length));
    r.result("count", count(rep.count()))
        .result("partitions", partitions(&rep.partitions))
        .result("max_product", int(&rep.max_product))
        .result("extremizers", partitions(&rep.extremizers))
        .result("bound_value", rat(&rep.bound_value))
        .result("bound_status", Value::String(bound_status(rep.bound_status).into()))
        .result("nodes", Value::String(rep.nodes.to_string()));
    let header = ["index", "iota", "parts", "head_product", "extremizer"].map(String::from).to_vec();
    let rows = rep
        .partitions
        .iter()
        .enumerate()
        .map(|(i, a)| {
            vec![
                (i + 1).to_string(),
                a.iota().to_string(),
                text(&ints(a.parts())),
                a.head_product().to_string(),
                rep.extremizers.contains(a).to_string(),
            ]
        })
        .collect();
    r.table = Some((header, rows));
    Ok(r)
}

fn bound_status(s: BoundStatus) -> &'static str {
    match s {
        BoundStatus::Matches => "matches",
        BoundStatus::Exceeds => "exceeds",
        BoundStatus::Below => "below",
    }
}

fn sharpness(iota: u64, length: usize, config: &EnumerationConfig) -> CmdResult {
    let v = verify_sharpness(iota, length, config).map_err(|e| e.to_string())?;
    let region = verify_region_report(&v.report);
    let mut r = Report::new("verify-sharpness");
    r.input("iota", count(iota as usize)).input("length", count(length));
    r.result("count", count(v.report.count()))
        .result("max_product", int(&v.report.max_product))
        .result("bound_value", rat(&v.report.bound_value))
        .result("bound_status", Value::String(bound_status(v.report.bound_status).into()))
        .result("extremizers", partitions(&v.report.extremizers))
        .result("expected", v.expected_extremizers.as_deref().map(partitions).unwrap_or(Value::Null))
        .result("region_checked", count(region.checked))
        .result("region_failures", count(region.failures.len()));
    r.status = match &v.status {
        SharpnessStatus::Confirmed => Status::Matches,
        SharpnessStatus::DocumentedException => {
            r.warn("(ι,n) = (1,3) lies outside the classification; the true maximum is reported");
            Status::Exception
        }
        SharpnessStatus::Mismatch(why) => {
            r.warn(why.clone());
            Status::Mismatch
        }
    };
    for (a, violations) in &region.failures {
        let names: Vec<String> = violations.iter().map(ToString::to_string).collect();
        r.warn(format!("region condition failed for {a}: {}", names.join(", ")));
        r.status = Status::Mismatch;
    }
    Ok(r)
}

fn verify_bound(iota: u64, dim: usize, mode: BoundMode, config: &EnumerationConfig) -> CmdResult {
    positive("iota", iota)?;
    if dim < 2 {
        return Err("verify-bound needs --dim >= 2; the bound for d = 1 is the constant 2 of P^1".into());
    }
    let expected = degree_bound(iota, dim).map_err(|e| e.to_string())?;
    let expected_attainers = attainers(iota, dim).map_err(|e| e.to_string())?;
    let mut r = Report::new("verify-bound");
    r.input("iota", count(iota as usize))
        .input("dim", count(dim))
        .input("mode", Value::String(format!("{mode:?}").to_lowercase()));
    r.result("expected", rat(&expected))
        .result("expected_attainers", Value::Array(expected_attainers.iter().map(weights).collect()));
    let mut ok = true;
    let mut values: Vec<BigRational> = Vec::new();

    if matches!(mode, BoundMode::Enumerate | BoundMode::Both) {
        let m = max_degree_over_partitions(iota, dim, config).map_err(|e| e.to_string())?;
        let mut found: Vec<WeightSystem> = m.reduced.iter().map(|(_, q)| q.sorted_desc()).collect();
        found.sort();
        let mut want: Vec<WeightSystem> = expected_attainers.iter().map(WeightSystem::sorted_desc).collect();
        want.sort();
        for a in &m.discarded {
            r.warn(format!("non-reduced witness discarded: {a} (factor {})", a.factor()));
        }
        let matches = m.value == expected && found == want;
        ok &= matches;
        values.push(m.value.clone());
        r.result(
            "enumeration",
            json!({
                "value": rat(&m.value),
                "witnesses": partitions(&m.witnesses),
                "attainers": Value::Array(m.reduced.iter().map(|(_, q)| weights(q)).collect()),
                "matches": matches,
            }),
        );
    }

    if matches!(mode, BoundMode::Construct | BoundMode::Both) {
        let mut entries = Vec::new();
        for q in &expected_attainers {
            let p = LatticeSimplex::from_weights(q).map_err(|e| e.to_string())?;
            let degree = p.degree().map_err(|e| e.to_string())?;
            let index = p.gorenstein_index().map_err(|e| e.to_string())?;
            let matches = degree == expected && index == BigInt::from(iota);
            ok &= matches;
            values.push(degree.clone());
            entries.push(json!({
                "weights": weights(q),
                "vertices": p.to_string(),
                "degree": rat(&degree),
                "gorenstein_index": int(&index),
                "matches": matches,
            }));
        }
        r.result("construction", Value::Array(entries));
    }

    if mode == BoundMode::Both {
        let agree = values.windows(2).all(|w| w[0] == w[1]);
        ok &= agree;
        r.result("routes_agree", json!(agree));
    }
    r.status = if ok { Status::Matches } else { Status::Mismatch };
    r.text_header = Some(table_header(iota, dim)?);
    Ok(r)
}

fn analyze(vertices: &str) -> CmdResult {
    let p = parse_simplex(vertices)?;
    let a = p.analyze().map_err(|e| e.to_string())?;
    let mut r = Report::new("analyze-simplex");
    r.input("vertices", Value::String(p.to_string()));
    r.result("weights", weights(&a.weights))
        .result("lambda", int(&a.lambda))
        .result("iota", int(&a.iota))
        .result("degree", rat(&a.degree))
        .result("partition", partition(&a.partition.partition))
        .result("partition_paired", ints(&a.partition.paired))
        .result(
            "dual_normals",
            Value::Array(a.normals.iter().map(|u| Value::Array(u.iter().map(rat).collect())).collect()),
        )
        .result(
            "volume_formula",
            json!({
                "lhs": rat(&a.volume_formula.lhs),
                "rhs": rat(&a.volume_formula.rhs),
                "holds": a.volume_formula.holds,
            }),
        );
    if !a.primitive {
        r.warn("vertices not primitive");
    }
    if !a.volume_formula.holds {
        r.status = Status::Mismatch;
    }
    Ok(r)
}

fn lemma44(max_iota: u64, max_n: usize) -> CmdResult {
    positive("iota", max_iota)?;
    let mut r = Report::new("lemma44-scan");
    r.input("iota", count(max_iota as usize)).input("length", count(max_n));
    let mut checked = 0usize;
    let mut equalities = Vec::new();
    let mut exceptions = Vec::new();
    let mut mismatches = Vec::new();
    for iota in 1..=max_iota {
        for n in 1..=max_n {
            for k in 1..=n {
                let c = check_product_inequality(iota, n, k).map_err(|e| e.to_string())?;
                checked += 1;
                let triple = json!([iota.to_string(), n.to_string(), k.to_string()]);
                match c.class {
                    ProductClass::Equality if k > 1 => equalities.push(triple.clone()),
                    ProductClass::Exception => exceptions.push(triple.clone()),
                    _ => {}
                }
                if c.class != expected_product_class(iota, n, k) {
                    mismatches.push(triple);
                }
            }
        }
    }
    r.result("checked", count(checked))
        .result("equalities_with_r_above_1", Value::Array(equalities))
        .result("exceptions", Value::Array(exceptions))
        .result("mismatches", Value::Array(mismatches.clone()));
    r.status = if mismatches.is_empty() { Status::Matches } else { Status::Mismatch };
    Ok(r)
}
