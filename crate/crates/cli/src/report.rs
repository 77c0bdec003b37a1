//! Report payloads and the envelope around them.

use std::collections::BTreeSet;

use serde::Serialize;

use mrlift_core::balacarter::bala_carter_data;
use mrlift_core::mrlift::{assemble_mr_lift, Hypothesis, LiftError, MRLift, ResidualGaloisData, VerifyReport};
use mrlift_core::primes::PrimeReport;
use mrlift_core::repdecomp::{decomposition_type, good_for_type_check, BlockSignature, GoodForType};
use mrlift_core::rootdatum::{CenterAndPi1, IsogenyClass, RootDatum, RootDatumError, TypeSpec};

use crate::input::{matrix_rows, Entry, GroupRepInput};

pub const TOOL: &str = "mrlift";

#[derive(Serialize)]
pub struct ReportEnvelope<P: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub input: serde_json::Value,
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
    pub exit_code: i32,
    pub payload: P,
}

impl<P: Serialize> ReportEnvelope<P> {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialise");
        s.push('\n');
        s
    }
}

#[derive(Serialize)]
pub struct ErrorPayload {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hypothesis: Option<Hypothesis>,
    pub message: String,
}

// ---------------------------------------------------------------- root-datum

#[derive(Serialize)]
pub struct RootDatumPayload {
    pub datum: String,
    pub isogeny: String,
    pub rank: usize,
    pub semisimple_rank: usize,
    pub weyl_order: u128,
    pub center_and_pi1: CenterAndPi1,
    pub primes: PrimeReport,
    pub bala_carter: Vec<String>,
}

pub fn root_datum_payload(type_string: &str, isogeny: &str) -> Result<RootDatumPayload, RootDatumError> {
    let spec: TypeSpec = type_string.parse()?;
    let iso = match (&spec, isogeny) {
        (TypeSpec::GeneralLinear(_), "preset") => IsogenyClass::Adjoint,
        (TypeSpec::GeneralLinear(_), other) => {
            return Err(RootDatumError::InvalidType(format!(
                "GL presets take --isogeny preset, not '{other}'"
            )))
        }
        (_, "preset") => {
            return Err(RootDatumError::InvalidType(
                "--isogeny preset applies to GLn(m) only".into(),
            ))
        }
        (_, other) => other.parse()?,
    };
    let d = RootDatum::from_spec(&spec, &iso)?;
    let primes = PrimeReport::compute(&d);
    let bala_carter = bala_carter_data(d.root_system()).into_iter().map(|l| l.name).collect();
    Ok(RootDatumPayload {
        datum: d.label().to_string(),
        isogeny: isogeny.to_string(),
        rank: d.rank(),
        semisimple_rank: d.semisimple_rank(),
        weyl_order: primes.weyl_order,
        center_and_pi1: d.center_and_pi1(),
        primes,
        bala_carter,
    })
}

fn set(s: &BTreeSet<u64>) -> String {
    let v: Vec<String> = s.iter().map(u64::to_string).collect();
    format!("{{{}}}", v.join(", "))
}

pub fn root_datum_text(p: &RootDatumPayload) -> String {
    let r = &p.primes;
    let mut out = String::new();
    out += &format!("datum            {}\n", p.datum);
    out += &format!("rank             {} (semisimple {})\n", p.rank, p.semisimple_rank);
    out += &format!("weyl order       {}\n", p.weyl_order);
    out += &format!("bad (good)       {}\n", set(&r.bad_primes_good));
    out += &format!("bad (pretty)     {}\n", set(&r.bad_primes_pretty_good));
    out += &format!("centre nonsmooth {}\n", set(&r.center_nonsmooth_primes));
    out += &format!("pi1 torsion      {}\n", set(&r.pi1_torsion_primes));
    out += &format!("c_G              {}\n", r.cg);
    if let Some(c) = r.improved_constant {
        out += &format!("improved const   {c}\n");
    }
    out += &format!("effective min p  {}\n", r.effective_min_p);
    for b in &r.effective_bullets {
        out += &format!("  [{}] {}\n", if b.satisfied { "x" } else { " " }, b.condition);
    }
    out += &format!("bala-carter      {} labels\n", p.bala_carter.len());
    for l in &p.bala_carter {
        out += &format!("  {l}\n");
    }
    out
}

// ---------------------------------------------------------------------- lift

#[derive(Serialize)]
pub struct RingInfo {
    pub p: u64,
    pub k: u32,
    pub e: usize,
    pub defining_polynomial: Vec<u64>,
}

#[derive(Serialize)]
pub struct DecompositionSummary {
    pub signatures: Vec<BlockSignature>,
    pub commutant_dim: usize,
    pub bicommutant_dim: usize,
    pub center_dim: usize,
    pub group_order: usize,
    pub synthetic_q: bool,
}

#[derive(Serialize)]
pub struct LiftMatrices {
    pub tau_generators: Vec<Vec<Vec<Entry>>>,
    pub a: Vec<Vec<Entry>>,
    pub u: Vec<Vec<Entry>>,
    pub n: Vec<Vec<Entry>>,
    pub z: Option<Vec<Vec<Entry>>>,
    pub rho_sigma: Vec<Vec<Entry>>,
    pub b: u32,
}

#[derive(Serialize)]
pub struct LiftPayload {
    pub ring: Option<RingInfo>,
    pub decomposition: Option<DecompositionSummary>,
    pub good_for_type: Option<GoodForType>,
    pub lift: Option<LiftMatrices>,
    pub verification: Option<VerifyReport>,
    pub error: Option<ErrorPayload>,
}

impl LiftPayload {
    fn failed(error: ErrorPayload) -> Self {
        LiftPayload {
            ring: None,
            decomposition: None,
            good_for_type: None,
            lift: None,
            verification: None,
            error: Some(error),
        }
    }
}

fn error_payload(e: &LiftError) -> ErrorPayload {
    let (kind, hypothesis) = match e {
        LiftError::Input(_) => ("input", None),
        LiftError::InvalidZ(_) => ("input", None),
        LiftError::Hypothesis { tag, .. } => ("hypothesis", Some(*tag)),
        LiftError::Verification(_) => ("verification", None),
        LiftError::Internal(_) => ("internal", None),
    };
    ErrorPayload {
        kind,
        hypothesis,
        message: e.to_string(),
    }
}

fn matrices(l: &MRLift, data: &ResidualGaloisData) -> LiftMatrices {
    LiftMatrices {
        tau_generators: l.tau.generator_images(&data.rep).iter().map(matrix_rows).collect(),
        a: matrix_rows(&l.a),
        u: matrix_rows(&l.u),
        n: matrix_rows(&l.n),
        z: l.z.as_ref().map(matrix_rows),
        rho_sigma: matrix_rows(&l.rho_sigma()),
        b: l.b,
    }
}

pub fn schema_error(msg: String) -> (LiftPayload, i32) {
    (
        LiftPayload::failed(ErrorPayload {
            kind: "schema",
            hypothesis: None,
            message: msg,
        }),
        1,
    )
}

/// Runs the lift pipeline; the exit code is 0 iff every check passes.
pub fn lift_payload(input: &GroupRepInput, k: u32, seed: u64, z: Option<&[i64]>) -> (LiftPayload, i32) {
    let fail = |e: LiftError| {
        let code = e.exit_code();
        (LiftPayload::failed(error_payload(&e)), code)
    };
    let rep = match input.to_rep() {
        Ok(r) => r,
        Err(e) => return fail(e.into()),
    };
    let ring = match mrlift_core::exactint::GaloisRing::new(input.p, k, input.e) {
        Ok(r) => r,
        Err(e) => return fail(e.into()),
    };
    let dt = match decomposition_type(&rep, seed) {
        Ok(d) => d,
        Err(e) => return fail(e.into()),
    };
    let good = good_for_type_check(&dt, rep.p());
    let decomposition = DecompositionSummary {
        signatures: dt.isotypic.signatures(),
        commutant_dim: dt.c_basis.len(),
        bicommutant_dim: dt.delta_basis.len(),
        center_dim: dt.center_basis.len(),
        group_order: rep.order(),
        synthetic_q: rep.is_synthetic(),
    };
    let mut payload = LiftPayload {
        ring: Some(RingInfo {
            p: ring.p(),
            k,
            e: ring.degree(),
            defining_polynomial: ring.defining_polynomial(),
        }),
        decomposition: Some(decomposition),
        good_for_type: Some(good),
        lift: None,
        verification: None,
        error: None,
    };
    let data = match ResidualGaloisData::new(rep) {
        Ok(d) => d,
        Err(e) => return fail(e),
    };
    match assemble_mr_lift(&data, k, seed, z) {
        Ok(l) => {
            payload.lift = Some(matrices(&l, &data));
            let code = if l.verification.all_passed { 0 } else { 3 };
            payload.verification = Some(l.verification);
            (payload, code)
        }
        Err(e) => {
            let code = e.exit_code();
            payload.error = Some(error_payload(&e));
            if let LiftError::Verification(r) = e {
                payload.verification = Some(*r);
            }
            (payload, code)
        }
    }
}

const TEXT_MATRIX_LIMIT: usize = 4;

fn matrix_text(rows: &[Vec<Entry>]) -> String {
    if rows.len() > TEXT_MATRIX_LIMIT {
        return format!("<{0}x{0} matrix elided>", rows.len());
    }
    let fmt = |e: &Entry| match e {
        Entry::Int(x) => x.to_string(),
        Entry::Coeffs(c) => format!("({})", c.iter().map(i64::to_string).collect::<Vec<_>>().join(",")),
    };
    let rs: Vec<String> = rows
        .iter()
        .map(|r| r.iter().map(fmt).collect::<Vec<_>>().join(" "))
        .collect();
    format!("[{}]", rs.join("; "))
}

pub fn lift_text(name: &str, p: &LiftPayload) -> String {
    let mut out = format!("input            {name}\n");
    if let Some(r) = &p.ring {
        out += &format!("ring             W(F_{}^{})/p^{}\n", r.p, r.e, r.k);
    }
    if let Some(d) = &p.decomposition {
        let sig: Vec<String> = d
            .signatures
            .iter()
            .map(|s| format!("(d={}, m={}, e={})", s.d, s.m, s.e))
            .collect();
        out += &format!(
            "group order      {}{}\n",
            d.group_order,
            if d.synthetic_q { " (synthetic q)" } else { "" }
        );
        out += &format!("blocks           {}\n", sig.join(" "));
        out += &format!(
            "dims C/Delta/Z   {}/{}/{}\n",
            d.commutant_dim, d.bicommutant_dim, d.center_dim
        );
    }
    if let Some(g) = &p.good_for_type {
        out += &format!("good for type    {} (bound {})\n", g.good, g.bound);
    }
    if let Some(l) = &p.lift {
        out += &format!("A                {}\n", matrix_text(&l.a));
        out += &format!("u                {}\n", matrix_text(&l.u));
        out += &format!("n                {}\n", matrix_text(&l.n));
        if let Some(z) = &l.z {
            out += &format!("z                {}\n", matrix_text(z));
        }
    }
    if let Some(v) = &p.verification {
        for c in &v.checks {
            out += &format!(
                "  [{}] {} {}\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            );
        }
    }
    if let Some(e) = &p.error {
        out += &format!("error ({})       {}\n", e.kind, e.message);
    }
    out
}
