//! Subcommand implementations. Each returns a JSON value, the text
//! rendering of the same data, and the exit status.

use std::fs;
use std::path::Path;

use brieskorn::brieskorn::{
    formal_poincare_series, graded_report, homogeneous_degree, is_isolated, milnor_dim,
    milnor_number, torsion_membership, torsion_order_of_class, verify_certificate,
    xpyq_cross_check, CertificateJson, TorsionCertificate, TorsionOrderVerdict, SCHEMA,
};
use brieskorn::polyring::{infer_ring, parse_poly, Polynomial, Ring};
use serde::Serialize;
use serde_json::Value;

use crate::error::{CliError, CliResult, Exit};

pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub exit: Exit,
}

impl Outcome {
    fn ok(json: impl Serialize, text: String) -> Self {
        Self::with_exit(json, text, Exit::Ok)
    }

    fn with_exit(json: impl Serialize, text: String, exit: Exit) -> Self {
        let json = serde_json::to_value(json).expect("report types serialize");
        Outcome { json, text, exit }
    }
}

/// Builds the ring from explicit names or infers it from the expressions.
pub fn ring_for(vars: Option<&[String]>, texts: &[&str]) -> CliResult<Ring> {
    match vars {
        Some(v) if !v.is_empty() => Ok(Ring::new(v.iter().map(|s| s.trim().to_string()))?),
        _ => Ok(infer_ring(texts)?),
    }
}

/// Parses `f` and checks it is homogeneous of degree at least 2.
pub fn parse_f(text: &str, ring: &Ring) -> CliResult<Polynomial> {
    let f = parse_poly(text, ring)?;
    homogeneous_degree(&f)?;
    Ok(f)
}

#[derive(Serialize)]
struct HilbertJson {
    schema: &'static str,
    f: String,
    vars: Vec<String>,
    n: usize,
    d: u32,
    dims: Vec<usize>,
    isolated: bool,
    mu: Option<usize>,
}

pub fn hilbert(f: &Polynomial, max_deg: Option<u32>) -> CliResult<Outcome> {
    let d = homogeneous_degree(f)?;
    let n = f.ring().nvars();
    let max_deg = max_deg.unwrap_or(n as u32 * (d - 2) + 2);
    let dims = (0..=max_deg).map(|e| milnor_dim(f, e)).collect::<Result<Vec<_>, _>>()?;
    let isolated = is_isolated(f)?;
    let mu = if isolated { Some(milnor_number(f)?) } else { None };
    let mut text = format!("f = {f}\n degree  dim M(f)\n");
    for (e, v) in dims.iter().enumerate() {
        text.push_str(&format!("{e:>7}  {v}\n"));
    }
    text.push_str(&format!("isolated: {}\n", if isolated { "yes" } else { "no" }));
    match mu {
        Some(mu) => text.push_str(&format!("mu = {mu}\n")),
        None => text.push_str("mu: infinite (non-isolated)\n"),
    }
    let json = HilbertJson {
        schema: SCHEMA,
        f: f.to_string(),
        vars: f.ring().names().to_vec(),
        n,
        d,
        dims,
        isolated,
        mu,
    };
    Ok(Outcome::ok(json, text))
}

pub fn dims(f: &Polynomial, min_deg: Option<u32>, max_deg: Option<u32>, kmax: u32) -> CliResult<Outcome> {
    let d = homogeneous_degree(f)?;
    let n = f.ring().nvars() as u32;
    let min_deg = min_deg.unwrap_or(n);
    let max_deg = max_deg.unwrap_or(n + 2 * d);
    let report = graded_report(f, min_deg, max_deg, kmax)?;
    let mut text = format!(
        "f = {f}  (n = {n}, d = {d}, isolated: {})\n{:>4} {:>5} {:>6} {:>6} {:>6}  torsion k=1..{kmax}\n",
        if report.isolated { "yes" } else { "no" },
        "s",
        "c",
        "dim_M",
        "dim_B",
        "dim_C"
    );
    for r in &report.rows {
        let torsion: Vec<String> = r.torsion.iter().map(usize::to_string).collect();
        text.push_str(&format!(
            "{:>4} {:>5} {:>6} {:>6} {:>6}  [{}]\n",
            r.s,
            r.coeff_deg,
            r.dim_m,
            r.dim_b,
            r.dim_c,
            torsion.join(", ")
        ));
    }
    match report.max_torsion_order_seen {
        Some(k) => text.push_str(&format!("largest torsion order seen: {k}\n")),
        None => text.push_str("no torsion seen in range\n"),
    }
    let exit = if report.identities_hold() {
        Exit::Ok
    } else {
        text.push_str("internal identity check FAILED\n");
        Exit::Internal
    };
    Ok(Outcome::with_exit(&report, text, exit))
}

pub enum TorsionMode {
    Membership(u32),
    Order(u32),
}

#[derive(Serialize)]
struct TorsionJson {
    schema: &'static str,
    f: String,
    g: String,
    vars: Vec<String>,
    verdict: &'static str,
    k: Option<u32>,
    order: Option<u32>,
    kmax: Option<u32>,
    certificate: Option<CertificateJson>,
}

pub fn torsion(
    f: &Polynomial,
    g: &Polynomial,
    mode: TorsionMode,
    cert_out: Option<&Path>,
) -> CliResult<Outcome> {
    let mut json = TorsionJson {
        schema: SCHEMA,
        f: f.to_string(),
        g: g.to_string(),
        vars: f.ring().names().to_vec(),
        verdict: "",
        k: None,
        order: None,
        kmax: None,
        certificate: None,
    };
    let (text, cert, exit) = match mode {
        TorsionMode::Membership(k) => {
            let m = torsion_membership(f, g, k)?;
            json.k = Some(k);
            json.verdict = if m.holds { "solvable" } else { "not_solvable" };
            let text = format!(
                "f^{k} * g * w_n in df^d(W^(n-2)): {} (rank {}, augmented rank {})\n",
                if m.holds { "solvable" } else { "not solvable" },
                m.rank,
                m.augmented_rank
            );
            (text, m.certificate, Exit::Ok)
        }
        TorsionMode::Order(kmax) => {
            json.kmax = Some(kmax);
            match torsion_order_of_class(f, g, kmax)? {
                TorsionOrderVerdict::ZeroClass(c) => {
                    json.verdict = "zero_class";
                    ("zero class: [g w_n] = 0 in B(f)\n".to_string(), Some(c), Exit::Ok)
                }
                TorsionOrderVerdict::Torsion { order, certificate } => {
                    json.verdict = "torsion";
                    json.order = Some(order);
                    (format!("torsion order {order}\n"), Some(certificate), Exit::Ok)
                }
                TorsionOrderVerdict::UnresolvedAbove(k) => {
                    json.verdict = "unresolved_above";
                    (
                        format!("unresolved: no annihilating power t^k with k <= {k}\n"),
                        None,
                        Exit::Unresolved,
                    )
                }
            }
        }
    };
    let mut text = text;
    if let Some(cert) = &cert {
        if !verify_certificate(cert) {
            return Err(CliError::new(Exit::Internal, "solver certificate failed verification"));
        }
        let cj = cert.to_json();
        text.push_str(&format!("witness eta = {}\n", cert.eta));
        if let Some(path) = cert_out {
            let body = serde_json::to_string_pretty(&cj).expect("certificate serializes");
            fs::write(path, body + "\n").map_err(|e| {
                CliError::new(Exit::Internal, format!("cannot write {}: {e}", path.display()))
            })?;
            text.push_str(&format!("certificate written to {}\n", path.display()));
        }
        json.certificate = Some(cj);
    }
    Ok(Outcome::with_exit(json, text, exit))
}

#[derive(Serialize)]
struct VerifyJson {
    schema: &'static str,
    file: String,
    verified: bool,
}

pub fn verify(path: &Path) -> CliResult<Outcome> {
    let body = fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("cannot read {}: {e}", path.display())))?;
    let cj: CertificateJson = serde_json::from_str(&body)
        .map_err(|e| CliError::parse(format!("malformed certificate {}: {e}", path.display())))?;
    let cert = TorsionCertificate::from_json(&cj).map_err(|e| {
        CliError::parse(format!("malformed certificate {}: {e}", path.display()))
    })?;
    let verified = verify_certificate(&cert);
    let text = if verified {
        format!("verified: df ^ d(eta) = f^{} * g * w_n\n", cert.k)
    } else {
        "verification FAILED: df ^ d(eta) differs from f^k * g * w_n\n".to_string()
    };
    let json = VerifyJson { schema: SCHEMA, file: path.display().to_string(), verified };
    let exit = if verified { Exit::Ok } else { Exit::VerifyFailed };
    Ok(Outcome::with_exit(json, text, exit))
}

#[derive(Serialize)]
struct SeriesJson {
    schema: &'static str,
    n: u32,
    d: u32,
    coefficients: Vec<String>,
}

pub fn series(n: u32, d: u32, terms: usize) -> CliResult<Outcome> {
    let coeffs = formal_poincare_series(n, d, terms)?;
    let coefficients: Vec<String> = coeffs.iter().map(ToString::to_string).collect();
    let text = coefficients.join(",") + "\n";
    Ok(Outcome::ok(SeriesJson { schema: SCHEMA, n, d, coefficients }, text))
}

pub fn xpyq(p: u32, q: u32, max_deg: Option<u32>, kmax: u32) -> CliResult<Outcome> {
    let max_deg = max_deg.unwrap_or(2 * (p + q) + 6);
    let check = xpyq_cross_check(p, q, max_deg, kmax)?;
    let o = &check.oracle;
    let mut text = format!(
        "f = x^{p}*y^{q}; C(f) generator x^{}*y^{} in total degree {}\n{:>4} {:>5} {:>8} {:>6} {:>6} {:>6}\n",
        o.c_generator.0, o.c_generator.1, o.c_generator_total_degree, "s", "c", "torsion", "dim_M", "dim_B", "dim_C"
    );
    for r in &o.rows {
        let c = r.coeff_deg.map_or("-".to_string(), |c| c.to_string());
        text.push_str(&format!(
            "{:>4} {:>5} {:>8} {:>6} {:>6} {:>6}\n",
            r.s, c, r.torsion_count, r.milnor_count, r.b_count, r.c_dim
        ));
    }
    for m in &check.mismatches {
        text.push_str(&format!("mismatch: {m}\n"));
    }
    text.push_str(&format!("cross-check {}\n", if check.pass { "PASS" } else { "FAIL" }));
    let exit = if check.pass { Exit::Ok } else { Exit::Internal };
    Ok(Outcome::with_exit(&check, text, exit))
}
