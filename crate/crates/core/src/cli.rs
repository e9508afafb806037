//! The `mm` command-line front end: argument parsing, dispatch to the
//! library, and deterministic text or JSON output.
//!
//! Exit codes: `0` success, `1` a `--check` comparison failed, `2` malformed
//! input, `3` unsupported input, `4` internal error.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::convolution_ts::{ts_assemble, ts_check};
use crate::error::{Error, Result};
use crate::groth_core::{Field, GrothElem};
use crate::milnor_calc::{check_open_closed, milnor_integral, motivic_fiber_b, motivic_fiber_g, Sign};
use crate::newton_engine::{is_nondegenerate, kouchnirenko_mu, newton, real_fiber_chi_by_sampling};
use crate::parse::parse_poly;
use crate::rational::q;
use crate::realize_maps::{beta, beta_mu2, realize_complex, realize_real};
use crate::zeta_engine::{coeff, limit_t_inf, motivic_zeta, topological_zeta};

#[derive(Debug, Parser)]
#[command(name = "mm", version, about = "Motivic Milnor fibers, zeta functions and realizations of plane curves")]
pub struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FieldArg {
    #[value(name = "C", alias = "c")]
    C,
    #[value(name = "R", alias = "r")]
    R,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SignArg {
    #[value(name = "+", alias = "plus")]
    Plus,
    #[value(name = "-", alias = "minus")]
    Minus,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Retraction {
    B,
    G,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Realize {
    None,
    Chi,
    Beta,
    BetaMu2,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OracleKind {
    Mu,
    Chi,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Newton polygon, face polynomials and nondegeneracy.
    Newton { poly: String },
    /// Motivic Milnor fiber.
    Milnor {
        poly: String,
        #[arg(long, value_enum, default_value = "C")]
        field: FieldArg,
        #[arg(long, value_enum, default_value = "+", allow_hyphen_values = true)]
        sign: SignArg,
        #[arg(long, value_enum, default_value = "b")]
        retraction: Retraction,
        #[arg(long, value_enum, default_value = "none")]
        realize: Realize,
        /// Also print the RES ⊗ Γ pieces of the integral.
        #[arg(long)]
        pieces: bool,
    },
    /// Motivic zeta function, its coefficients and its limit.
    Zeta {
        poly: String,
        #[arg(long, value_enum, default_value = "C")]
        field: FieldArg,
        #[arg(long, value_enum, default_value = "+", allow_hyphen_values = true)]
        sign: SignArg,
        /// Print the first M coefficients.
        #[arg(long, value_name = "M")]
        coeffs: Option<i64>,
        /// Print −lim_{T→∞} Z(T).
        #[arg(long)]
        limit: bool,
        /// Print the topological zeta function (real Euler realization).
        #[arg(long)]
        topological: bool,
    },
    /// Thom–Sebastiani assembly for h = g^N + f^{m₂} + … + f^{m_ℓ}.
    Ts {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long = "N", value_name = "N")]
        n: u64,
        /// Comma-separated exponents m₂, …, m_ℓ.
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<u64>,
        /// Compare with the direct computation; exit 1 on mismatch.
        #[arg(long)]
        check: bool,
    },
    /// T-convex Euler characteristics of the closed and open real fibers.
    Tconvex {
        poly: String,
        #[arg(long, value_enum, default_value = "+", allow_hyphen_values = true)]
        sign: SignArg,
    },
    /// Independent oracles: Kouchnirenko's μ, or Euler characteristics.
    Oracle {
        #[arg(value_enum)]
        kind: OracleKind,
        poly: String,
    },
}

/// Result of one command: text, JSON and the exit status.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub text: String,
    pub json: Value,
    pub status: i32,
    /// Diagnostics for stderr.
    pub diagnostics: Vec<String>,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, status: 0, diagnostics: vec![] }
    }
}

/// Exit status for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => 2,
        Error::Unsupported(_) => 3,
        Error::Internal(_) => 4,
    }
}

fn field(f: FieldArg) -> Field {
    match f {
        FieldArg::C => Field::C,
        FieldArg::R => Field::R,
    }
}

fn sign(s: SignArg) -> Sign {
    match s {
        SignArg::Plus => Sign::Plus,
        SignArg::Minus => Sign::Minus,
    }
}

fn elem_json(e: &GrothElem) -> Value {
    serde_json::to_value(e).expect("classes serialize")
}

fn cmd_newton(src: &str) -> Result<Output> {
    let f = parse_poly(src)?;
    let nd = newton(&f)?;
    let nondeg = is_nondegenerate(&f);
    let mut text = format!("f = {}\n", f.render("x", "y"));
    let verts: Vec<String> = nd.vertices.iter().map(|v| format!("({},{})", v.0, v.1)).collect();
    text += &format!("vertices: {}\n", verts.join(" "));
    let mut edges = Vec::new();
    for e in &nd.edges {
        text += &format!(
            "edge ({},{})-({},{}): normal ({},{}) level {} length {} f_E = {}\n",
            e.start.0, e.start.1, e.end.0, e.end.1, e.normal.0, e.normal.1, e.level, e.lattice_length,
            e.poly.render("x", "y")
        );
        edges.push(json!({
            "start": [e.start.0, e.start.1], "end": [e.end.0, e.end.1],
            "normal": [e.normal.0, e.normal.1], "level": e.level,
            "lattice_length": e.lattice_length, "face_poly": e.poly.render("x", "y"),
        }));
    }
    text += &format!("convenient: {}\nnondegenerate: {}", nd.convenient, nondeg);
    let mu = if nd.convenient && nondeg { kouchnirenko_mu(&f).ok() } else { None };
    if let Some(mu) = mu {
        text += &format!("\nmu = {mu}");
    }
    let json = json!({
        "kind": "newton", "poly": f.render("x", "y"),
        "vertices": nd.vertices.iter().map(|v| [v.0, v.1]).collect::<Vec<_>>(),
        "edges": edges, "convenient": nd.convenient, "nondegenerate": nondeg, "mu": mu,
    });
    Ok(Output::ok(text, json))
}

fn cmd_milnor(src: &str, fa: FieldArg, sa: SignArg, r: Retraction, real: Realize, pieces: bool) -> Result<Output> {
    let f = parse_poly(src)?;
    let (fld, sg) = (field(fa), sign(sa));
    let class = match r {
        Retraction::B => motivic_fiber_b(&f, fld, sg)?,
        Retraction::G => motivic_fiber_g(&f, fld, sg)?,
    };
    let mut text = String::new();
    if pieces {
        text += &format!("{}\n", milnor_integral(&f, fld, sg)?);
    }
    text += &class.to_string();
    for t in class.describe_tags() {
        text += &format!("\n  {t}");
    }
    let realization = match (real, fld) {
        (Realize::None, _) => None,
        (Realize::Chi, Field::C) => Some(("chi", realize_complex(&class)?.to_string())),
        (Realize::Chi, Field::R) => Some(("chi", realize_real(&class)?.to_string())),
        (Realize::Beta, _) => Some(("beta", beta(&crate::groth_core::forget(&class))?.to_string())),
        (Realize::BetaMu2, _) => Some(("beta_mu2", beta_mu2(&class)?.to_string())),
    };
    if let Some((name, v)) = &realization {
        text += &format!("\n{name} = {v}");
    }
    let json = json!({
        "kind": "milnor", "poly": f.render("x", "y"), "field": format!("{fld:?}"),
        "sign": if sg == Sign::Plus { "+" } else { "-" },
        "retraction": if matches!(r, Retraction::B) { "b" } else { "g" },
        "class": elem_json(&class),
        "realization": realization.map(|(n, v)| json!({"name": n, "value": v})),
    });
    Ok(Output::ok(text, json))
}

fn cmd_zeta(src: &str, fa: FieldArg, sa: SignArg, coeffs: Option<i64>, limit: bool, topo: bool) -> Result<Output> {
    let f = parse_poly(src)?;
    let (fld, sg) = (field(fa), sign(sa));
    let z = motivic_zeta(&f, fld, sg)?;
    let mut lines = vec![format!("Z(T) = {z}")];
    let mut json = json!({"kind": "zeta_result", "poly": f.render("x", "y"), "zeta": z});
    if let Some(m) = coeffs {
        let cs: Vec<GrothElem> = (1..=m).map(|k| coeff(&z, k)).collect();
        for (k, c) in cs.iter().enumerate() {
            lines.push(format!("[T^{}] {c}", k + 1));
        }
        json["coeffs"] = Value::Array(cs.iter().map(elem_json).collect());
    }
    if limit {
        let l = limit_t_inf(&z)?.neg();
        lines.push(format!("-lim = {l}"));
        json["neg_limit"] = elem_json(&l);
    }
    if topo {
        let t = topological_zeta(&f, sg)?;
        let l = -t.limit_inf()?;
        lines.push(format!("Z_top(T) = {t}"));
        lines.push(format!("-lim Z_top = {}", crate::rational::fmt_q(&l)));
        json["topological"] = serde_json::to_value(&t).expect("serializable");
    }
    // With only --limit requested, print just the limit line.
    let text = if limit && coeffs.is_none() && !topo { lines.pop().unwrap() } else { lines.join("\n") };
    Ok(Output::ok(text, json))
}

fn cmd_ts(f: &str, g: &str, n: u64, m: &[u64], check: bool) -> Result<Output> {
    let (f, g) = (parse_poly(f)?, parse_poly(g)?);
    let a = ts_assemble(&f, &g, n, m)?;
    let mut text = format!("h = {}\n", a.h.render("x", "y"));
    for t in &a.terms {
        text += &format!("  {}: {}\n", t.label, t.class);
    }
    text += &format!("S_h = {}", a.total);
    let mut json = json!({"kind": "ts", "assembly": a});
    let mut status = 0;
    if check {
        let c = ts_check(&a)?;
        text += &format!(
            "\ndirect = {}\nclasses {}\neuler assembled={} direct={} 1-mu={} {}",
            c.direct,
            if c.classes_equal { "agree" } else { "DIFFER" },
            c.euler_assembled,
            c.euler_direct,
            c.euler_oracle,
            if c.euler_equal { "OK" } else { "MISMATCH" }
        );
        if !(c.classes_equal && c.euler_equal) {
            status = 1;
        }
        json["check"] = serde_json::to_value(&c).expect("serializable");
    }
    Ok(Output { text, json, status, diagnostics: a.diagnostics })
}

fn cmd_tconvex(src: &str, sa: SignArg) -> Result<Output> {
    let f = parse_poly(src)?;
    let oc = check_open_closed(&f, sign(sa))?;
    let text = format!(
        "chi_closed={} chi_open={} relation={}",
        oc.chi_closed,
        oc.chi_open,
        if oc.holds { "OK" } else { "FAIL" }
    );
    let json = json!({"kind": "tconvex", "poly": f.render("x", "y"), "result": oc});
    Ok(Output { status: if oc.holds { 0 } else { 1 }, ..Output::ok(text, json) })
}

fn cmd_oracle(kind: OracleKind, src: &str) -> Result<Output> {
    let f = parse_poly(src)?;
    match kind {
        OracleKind::Mu => {
            let mu = kouchnirenko_mu(&f)?;
            Ok(Output::ok(format!("mu = {mu}"), json!({"kind": "oracle_mu", "mu": mu})))
        }
        OracleKind::Chi => {
            let mu = kouchnirenko_mu(&f)?;
            let radius = q(1, 20);
            let plus = real_fiber_chi_by_sampling(&f, false, &radius, 400);
            let minus = real_fiber_chi_by_sampling(&f, true, &radius, 400);
            Ok(Output::ok(
                format!("chi_complex = {}\nchi_real_plus = {plus}\nchi_real_minus = {minus}", 1 - mu),
                json!({"kind": "oracle_chi", "chi_complex": 1 - mu, "chi_real_plus": plus, "chi_real_minus": minus}),
            ))
        }
    }
}

/// Run one parsed command.
pub fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Newton { poly } => cmd_newton(poly),
        Command::Milnor { poly, field, sign, retraction, realize, pieces } => {
            cmd_milnor(poly, *field, *sign, *retraction, *realize, *pieces)
        }
        Command::Zeta { poly, field, sign, coeffs, limit, topological } => {
            cmd_zeta(poly, *field, *sign, *coeffs, *limit, *topological)
        }
        Command::Ts { f, g, n, m, check } => cmd_ts(f, g, *n, m, *check),
        Command::Tconvex { poly, sign } => cmd_tconvex(poly, *sign),
        Command::Oracle { kind, poly } => cmd_oracle(*kind, poly),
    }
}

/// Parse `args`, run, print, and return the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(out) => {
            for d in &out.diagnostics {
                eprintln!("note: {d}");
            }
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("JSON output"));
            } else {
                println!("{}", out.text);
            }
            out.status
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta_engine::ZetaRat;

    fn run_args(args: &[&str]) -> Result<Output> {
        let cli = Cli::try_parse_from(std::iter::once("mm").chain(args.iter().copied())).unwrap();
        run(&cli)
    }

    #[test]
    fn exam_milnor() {
        let out = run_args(&["milnor", "x^6+x^2*y^2+y^6", "--field", "R", "--retraction", "b"]).unwrap();
        assert!(out.text.starts_with("2*[{x^6+x^2y^2=1}] - [Gm]*[{x^2=1}]"), "{}", out.text);
        assert!(out.text.contains("mu_2 swap"));
        let back: GrothElem = serde_json::from_value(out.json["class"].clone()).unwrap();
        assert_eq!(back, motivic_fiber_b(&parse_poly("x^6+x^2*y^2+y^6").unwrap(), Field::R, Sign::Plus).unwrap());
    }

    #[test]
    fn zeta_limit_and_round_trip() {
        assert_eq!(run_args(&["zeta", "x", "--limit"]).unwrap().text, "-lim = 1");
        let out = run_args(&["zeta", "x^2+y^3", "--coeffs", "3"]).unwrap();
        let z: ZetaRat = serde_json::from_value(out.json["zeta"].clone()).unwrap();
        assert_eq!(z, motivic_zeta(&parse_poly("x^2+y^3").unwrap(), Field::C, Sign::Plus).unwrap());
        assert!(run_args(&["zeta", "x", "--topological"]).unwrap().text.contains("(-T)/(T+1)"));
    }

    #[test]
    fn tconvex_lines() {
        assert_eq!(run_args(&["tconvex", "x^3*y^2"]).unwrap().text, "chi_closed=2 chi_open=-2 relation=OK");
        assert_eq!(run_args(&["tconvex", "x^2*y^2"]).unwrap().text, "chi_closed=4 chi_open=-4 relation=OK");
        // −x²y² = ε > 0 has no real solutions.
        assert_eq!(run_args(&["tconvex", "x^2*y^2", "--sign", "-"]).unwrap().text, "chi_closed=0 chi_open=0 relation=OK");
    }

    #[test]
    fn ts_check_status() {
        let out = run_args(&["ts", "--f", "x", "--g", "y", "--N", "5", "--m", "2", "--check"]).unwrap();
        assert_eq!(out.status, 0, "{}", out.text);
        assert!(out.text.contains("1-mu=-3"));
    }

    #[test]
    fn error_codes() {
        assert_eq!(exit_code(&run_args(&["newton", "x^2 + z"]).unwrap_err()), 2);
        assert_eq!(exit_code(&run_args(&["milnor", "x^2+2*x*y+y^2"]).unwrap_err()), 3);
        assert_eq!(exit_code(&Error::Internal("x".into())), 4);
    }

    #[test]
    fn deterministic_output() {
        let a = run_args(&["milnor", "x^4+x^2*y+y^5", "--field", "R", "--realize", "chi"]).unwrap();
        let b = run_args(&["milnor", "x^4+x^2*y+y^5", "--field", "R", "--realize", "chi"]).unwrap();
        assert_eq!(a, b);
    }
}
