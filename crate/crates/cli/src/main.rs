//! Command-line driver: validate fan files, print mirror-curve charts and
//! disk potentials, classify and verify wall crossings, and run monodromy
//! checks on the bundled corpus or user fan files.
//!
//! Exit codes: 0 pass, 1 usage or parse error, 2 validation or check
//! failure, 3 numeric tracking failure.

mod fanfile;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use num_traits::One;

use octc_core::curve::{build_curve, render_monomial, ChartNames, ExpAffine, Monomial};
use octc_core::exact::{Cyclo, Rat};
use octc_core::fan::{Brane, BraneKind};
use octc_core::gkz::{
    gkz_data, parameter_relations, q_alpha, select_a0, select_pbasis, verify_wall_charts,
    CrossingCase, GkzData, PBasis,
};
use octc_core::numeric::{
    monodromy_check, restricted_numeric_curve, verify_octc, TrackConfig, VerifyConfig,
};
use octc_core::series::{branch_system, disk_potential, u_matrix, TruncatedSeries};

use fanfile::{BraneSpec, FanFile};

#[derive(Parser)]
#[command(name = "octc", version, about = "mirror-curve wall-crossing toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check fan structure and triangulation regularity.
    Validate {
        /// Bundled fan name or path to a fan file.
        fan: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the framed mirror-curve chart of a brane.
    Curve {
        fan: String,
        /// Brane edge as 1-based point indices, e.g. --edge 3,4.
        #[arg(long)]
        edge: Option<String>,
        /// 1-based index of the primary cone (required for inner branes).
        #[arg(long)]
        flag: Option<usize>,
        #[arg(long)]
        framing: Option<i64>,
        /// Keep the framing symbolic in the rendering.
        #[arg(long)]
        symbolic_framing: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the disk potentials W_1..W_ell of a brane.
    Disk {
        fan: String,
        #[arg(long)]
        edge: Option<String>,
        #[arg(long)]
        flag: Option<usize>,
        #[arg(long)]
        framing: Option<i64>,
        /// Series truncation order.
        #[arg(long, default_value_t = 6)]
        order: usize,
        /// Coefficient backend: exact | float.
        #[arg(long, default_value = "exact")]
        backend: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify and verify a single wall crossing between two fans.
    Wallcross {
        /// Resolved-side fan (bundled name or file).
        plus: String,
        /// Other-side fan (bundled name or file); the brane lives here.
        minus: String,
        #[arg(long)]
        edge: Option<String>,
        #[arg(long)]
        flag: Option<usize>,
        #[arg(long)]
        framing: Option<i64>,
        /// Run the exact term-by-term identification (on by default).
        #[arg(long)]
        verify_exact: bool,
        /// Run the numeric continuation and monodromy checks.
        #[arg(long)]
        verify_numeric: bool,
        /// Report the relations with the framing symbolic.
        #[arg(long)]
        symbolic_framing: bool,
        #[arg(long, default_value_t = 12)]
        order: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        tol_match: Option<f64>,
        #[arg(long)]
        tol_residual: Option<f64>,
        /// Comma-separated magnitudes of the crossing parameter along the
        /// continuation path; the last entry sets the path endpoint.
        #[arg(long)]
        path: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monodromy of the restricted equation 1 + sum w_j y^j + y^ell.
    Monodromy {
        /// Optional fan whose brane determines the edge order.
        fan: Option<String>,
        #[arg(long)]
        edge: Option<String>,
        #[arg(long)]
        flag: Option<usize>,
        /// Edge order, if no fan is given.
        #[arg(long)]
        ell: Option<i64>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        tol_residual: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the bundled corpus, print one entry, or generate `an N`.
    Examples {
        /// Empty: list. A name: print that fan file. `an N`: generate.
        args: Vec<String>,
    },
}

/// A command failure carrying its process exit code.
struct Failure {
    code: u8,
    msg: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: 1, msg: msg.into() }
}

fn checkfail(msg: impl Into<String>) -> Failure {
    Failure { code: 2, msg: msg.into() }
}

fn numfail(msg: impl Into<String>) -> Failure {
    Failure { code: 3, msg: msg.into() }
}

fn core_err(e: octc_core::Error) -> Failure {
    match e {
        octc_core::Error::Numeric(_) => numfail(e.to_string()),
        octc_core::Error::Parse(_) => usage(e.to_string()),
        _ => checkfail(e.to_string()),
    }
}

/// FNV-1a digest of the canonical input rendering, for the report header.
fn digest(text: &str) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in text.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{:016x}", h)
}

fn load(arg: &str) -> Result<FanFile, Failure> {
    if let Some(text) = fanfile::corpus_text(arg) {
        return fanfile::parse(text).map_err(|e| usage(format!("corpus '{}': {}", arg, e)));
    }
    let path = Path::new(arg);
    if path.exists() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| usage(format!("{}: {}", arg, e)))?;
        return fanfile::parse(&text).map_err(|e| usage(format!("{}: {}", arg, e)));
    }
    Err(usage(format!("'{}' is neither a bundled fan name nor a readable file", arg)))
}

fn parse_edge(s: &str) -> Result<(usize, usize), Failure> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(usage("--edge expects two comma-separated 1-based indices"));
    }
    let mut out = [0usize; 2];
    for (o, p) in out.iter_mut().zip(&parts) {
        let v: usize = p.trim().parse().map_err(|_| usage("bad --edge index"))?;
        if v == 0 {
            return Err(usage("--edge indices are 1-based"));
        }
        *o = v - 1;
    }
    Ok((out[0], out[1]))
}

/// Resolve the brane selector: CLI flags override the file's first brane.
fn resolve_brane(
    ff: &FanFile,
    edge: &Option<String>,
    flag: &Option<usize>,
    framing: &Option<i64>,
) -> Result<(Brane, BraneSpec), Failure> {
    let file_default = ff.branes.first();
    let edge = match edge {
        Some(s) => parse_edge(s)?,
        None => file_default.map(|b| b.edge).ok_or_else(|| {
            usage("no brane: pass --edge or add a 'brane:' line to the fan file")
        })?,
    };
    let cone = match flag {
        Some(c) => {
            if *c == 0 {
                return Err(usage("--flag cone indices are 1-based"));
            }
            Some(c - 1)
        }
        None => file_default.and_then(|b| if b.edge == edge { b.cone } else { None }),
    };
    let framing = framing
        .or_else(|| file_default.and_then(|b| if b.edge == edge { Some(b.framing) } else { None }))
        .unwrap_or(0);
    let brane = ff.fan.make_brane(edge, framing, cone).map_err(core_err)?;
    Ok((brane, BraneSpec { edge, framing, cone }))
}

fn validated_gkz(ff: &FanFile) -> Result<(GkzData, PBasis), Failure> {
    let violations = ff.fan.validate();
    if !violations.is_empty() {
        return Err(checkfail(format!("invalid fan: {}", violations.join("; "))));
    }
    let g = gkz_data(&ff.fan).map_err(core_err)?;
    let hints = ff.pbasis.as_deref();
    let pb = select_pbasis(&ff.fan, &g, hints).map_err(core_err)?;
    Ok((g, pb))
}

struct Report {
    lines: Vec<String>,
    pass: bool,
}

impl Report {
    fn new(command: &str) -> Self {
        Report {
            lines: vec!["octc report v1".into(), format!("command: {}", command)],
            pass: true,
        }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn check(&mut self, name: &str, pass: bool, detail: &str) {
        self.pass &= pass;
        self.line(format!(
            "check {}: {} - {}",
            name,
            if pass { "pass" } else { "fail" },
            detail
        ));
    }

    fn finish(mut self, out: &Option<PathBuf>) -> Result<bool, Failure> {
        self.line(format!("result: {}", if self.pass { "pass" } else { "fail" }));
        let text = self.lines.join("\n") + "\n";
        print!("{}", text);
        if let Some(path) = out {
            std::fs::write(path, &text)
                .map_err(|e| usage(format!("cannot write {}: {}", path.display(), e)))?;
        }
        Ok(self.pass)
    }
}

fn input_line(r: &mut Report, ff: &FanFile) {
    let canon = fanfile::render(&ff.name, &ff.fan, &ff.branes);
    r.line(format!(
        "input: {} (digest {}, {} points, {} parameters)",
        ff.name,
        digest(&canon),
        ff.fan.r(),
        ff.fan.k()
    ));
}

fn brane_line(r: &mut Report, brane: &Brane, symbolic: bool) {
    let kind = match brane.kind {
        BraneKind::Outer => "outer",
        BraneKind::Inner => "inner",
    };
    let framing = if symbolic { "f (symbolic)".to_string() } else { brane.framing.to_string() };
    r.line(format!(
        "brane: edge [{} {}], {}, edge order {}, framing {}",
        brane.edge.0 + 1,
        brane.edge.1 + 1,
        kind,
        brane.ell,
        framing
    ));
}

fn cmd_validate(fan: &str, out: &Option<PathBuf>) -> Result<bool, Failure> {
    let ff = load(fan)?;
    let mut r = Report::new(&format!("validate {}", fan));
    input_line(&mut r, &ff);
    let violations = ff.fan.validate();
    if violations.is_empty() {
        r.check("fan-structure", true, "simplicial, spanning, regular triangulation");
        match ff.fan.regularity_slack() {
            Ok(s) => r.check("regularity", s > Rat::from_integer(0.into()), &format!("certified slack {}", s)),
            Err(e) => r.check("regularity", false, &e.to_string()),
        }
    } else {
        for v in &violations {
            r.line(format!("violation: {}", v));
        }
        r.check("fan-structure", false, &format!("{} violation(s)", violations.len()));
    }
    r.finish(out)
}

fn cmd_curve(
    fan: &str,
    edge: &Option<String>,
    flag: &Option<usize>,
    framing: &Option<i64>,
    symbolic: bool,
    out: &Option<PathBuf>,
) -> Result<bool, Failure> {
    let ff = load(fan)?;
    let (_, pb) = validated_gkz(&ff)?;
    let (brane, spec) = resolve_brane(&ff, edge, flag, framing)?;
    let mut r = Report::new(&format!("curve {}", fan));
    input_line(&mut r, &ff);
    brane_line(&mut r, &brane, symbolic);
    let names = ChartNames::plain(pb.k());
    let curve = build_curve(&ff.fan, &pb, &brane, &names).map_err(core_err)?;
    let rendered = if symbolic {
        curve.render()
    } else {
        curve.bind_framing(spec.framing).render()
    };
    r.line(format!("curve: {}", rendered));
    r.finish(out)
}

/// Render one truncated series with rational coefficients.
fn render_exact_series(w: &TruncatedSeries<Cyclo>, vars: &[String]) -> String {
    let mut parts = vec![];
    for (key, c) in &w.terms {
        let Some(rat) = c.as_rational() else { continue };
        if rat == Rat::from_integer(0.into()) {
            continue;
        }
        let mono: Vec<String> = key
            .iter()
            .zip(vars)
            .filter(|(e, _)| **e > 0)
            .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{}^{}", v, e) })
            .collect();
        let mono = mono.join("*");
        let part = if mono.is_empty() {
            format!("{}", rat)
        } else if rat == Rat::one() {
            mono
        } else {
            format!("{}*{}", rat, mono)
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn render_float_series(w: &TruncatedSeries<Complex64>, vars: &[String]) -> String {
    let mut parts = vec![];
    for (key, c) in &w.terms {
        let mono: Vec<String> = key
            .iter()
            .zip(vars)
            .filter(|(e, _)| **e > 0)
            .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{}^{}", v, e) })
            .collect();
        let coeff = if c.im.abs() <= 1e-9 * (1.0 + c.re.abs()) {
            format!("{:.12}", c.re)
        } else {
            format!("({:.12}{:+.12}i)", c.re, c.im)
        };
        if mono.is_empty() {
            parts.push(coeff);
        } else {
            parts.push(format!("{}*{}", coeff, mono.join("*")));
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn cmd_disk(
    fan: &str,
    edge: &Option<String>,
    flag: &Option<usize>,
    framing: &Option<i64>,
    order: usize,
    backend: &str,
    out: &Option<PathBuf>,
) -> Result<bool, Failure> {
    let ff = load(fan)?;
    let (_, pb) = validated_gkz(&ff)?;
    let (brane, _) = resolve_brane(&ff, edge, flag, framing)?;
    let mut r = Report::new(&format!("disk {} --order {} --backend {}", fan, order, backend));
    input_line(&mut r, &ff);
    brane_line(&mut r, &brane, false);
    let names = ChartNames::plain(pb.k());
    let a0 = if brane.secondary.is_some() {
        let alpha = q_alpha(&ff.fan, &pb, &brane).map_err(core_err)?;
        Some(select_a0(&alpha, false).map_err(core_err)?)
    } else {
        None
    };
    let ell = ff.fan.edge_order(brane.edge) as u32;
    match backend {
        "exact" => {
            let sys = branch_system::<Cyclo>(&ff.fan, &pb, &brane, &names, a0, order, 2 * ell)
                .map_err(core_err)?;
            let branches = sys.newton_branches().map_err(core_err)?;
            let w = disk_potential(&sys, &branches).map_err(core_err)?;
            r.line(format!("branches: {} (cyclotomic conductor {})", branches.len(), 2 * ell));
            for (j, wj) in w.iter().enumerate() {
                r.line(format!("W_{}: {}", j + 1, render_exact_series(wj, &sys.ctx.vars)));
            }
        }
        "float" => {
            let sys = branch_system::<Complex64>(&ff.fan, &pb, &brane, &names, a0, order, ())
                .map_err(core_err)?;
            let branches = sys.newton_branches().map_err(core_err)?;
            let w = disk_potential(&sys, &branches).map_err(core_err)?;
            r.line(format!("branches: {} (float backend)", branches.len()));
            for (j, wj) in w.iter().enumerate() {
                r.line(format!("W_{}: {}", j + 1, render_float_series(wj, &sys.ctx.vars)));
            }
        }
        other => return Err(usage(format!("unknown backend '{}' (use exact or float)", other))),
    }
    r.finish(out)
}

/// Render a substitution rule `lhs = monomial` with the monomial in the
/// plus-chart roster order.
fn rule_line(lhs: &str, m: &Monomial, roster: &[String]) -> String {
    format!("rule: {} = {}", lhs, render_monomial(m, roster))
}

fn render_cyclo(c: &Cyclo) -> String {
    if let Some(r) = c.as_rational() {
        return format!("{}", r);
    }
    let z = c.embed();
    format!("({:.6}{:+.6}i)", z.re, z.im)
}

fn render_matrix(m: &[Vec<Cyclo>]) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|row| {
            let es: Vec<String> = row.iter().map(render_cyclo).collect();
            format!("[{}]", es.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

#[allow(clippy::too_many_arguments)]
fn cmd_wallcross(
    plus: &str,
    minus: &str,
    edge: &Option<String>,
    flag: &Option<usize>,
    framing: &Option<i64>,
    verify_exact: bool,
    verify_numeric: bool,
    symbolic: bool,
    order: usize,
    seed: u64,
    tol_match: Option<f64>,
    tol_residual: Option<f64>,
    path: &Option<String>,
    out: &Option<PathBuf>,
) -> Result<bool, Failure> {
    let ffp = load(plus)?;
    let ffm = load(minus)?;
    validated_gkz(&ffp)?;
    validated_gkz(&ffm)?;
    let (brane, spec) = resolve_brane(&ffm, edge, flag, framing)?;
    let mut r = Report::new(&format!("wallcross {} {}", plus, minus));
    input_line(&mut r, &ffp);
    input_line(&mut r, &ffm);
    brane_line(&mut r, &brane, symbolic);
    let wc = parameter_relations(&ffp.fan, &ffm.fan, &brane).map_err(core_err)?;
    let k = wc.k;
    r.line(format!("case: {}", wc.case.label()));
    let cs: Vec<String> = wc.c.iter().map(|c| c.to_string()).collect();
    r.line(format!("crossing exponents c: [{}]", cs.join(", ")));
    let np = ChartNames::suffixed(k, "+");
    let nm = ChartNames::suffixed(k, "-");
    let n2 = ChartNames { q: np.q.clone(), x: "x+2".into(), y: "y+2".into() };
    let mut roster = np.roster();
    roster.push(n2.x.clone());
    roster.push(n2.y.clone());

    // Chart relations: minus variables as monomials in the plus variables.
    let rules = wc.substitution_rules(&np, &nm);
    let bind = |m: &Monomial| -> Monomial {
        if symbolic {
            m.clone()
        } else {
            m.bind_framing(&Rat::from_integer(spec.framing.into()))
        }
    };
    for q in &nm.q {
        r.line(rule_line(q, &bind(&rules[q]), &roster));
    }
    r.line(rule_line(&nm.x, &bind(&rules[&nm.x]), &roster));
    r.line(rule_line(&nm.y, &bind(&rules[&nm.y]), &roster));
    let shift = wc.framing_shift;
    r.line(format!(
        "framing: f- = f+{}",
        if shift == 0 {
            String::new()
        } else if shift < 0 {
            format!(" + {}", -shift)
        } else {
            format!(" - {}", shift)
        }
    ));
    if let Some(rules2) = wc.second_rules(&np, &n2) {
        r.line(rule_line(&n2.x, &bind(&rules2[&n2.x]), &roster));
        r.line(rule_line(&n2.y, &bind(&rules2[&n2.y]), &roster));
        let c3 = wc.case3.as_ref().unwrap();
        r.line(format!(
            "second chart identity: H+ = y+^{} * H+2 under the displayed rules",
            c3.ell1
        ));
    }
    if let Some(z) = &wc.z_exp {
        let m = Monomial::var(&np.q[0], z.clone());
        r.line(format!("inner winding: z- = z+ * {}", render_monomial(&bind(&m), &roster)));
    }
    // The open-variable exponent follows from the general wall relation; the
    // exact identification below certifies it term by term.
    let xm = Monomial::var(&np.x, ExpAffine::from_int(1))
        .mul(&Monomial::var(&np.q[0], wc.x_exp.clone()));
    r.line(format!(
        "open-variable relation: the general wall-crossing formula gives {} = {}; \
         exact term-by-term matching certifies this exponent",
        nm.x,
        render_monomial(&xm, &roster)
    ));

    // Exact identification (always computed; --verify-exact makes it
    // explicit in the command echo).
    let _ = verify_exact;
    match verify_wall_charts(&ffp.fan, &ffm.fan, &wc, &np, &nm, &n2) {
        Ok(charts) => {
            r.check(
                "exact-identification",
                true,
                "all chart terms match under the displayed rules (zero tolerance, symbolic framing)",
            );
            r.line(format!("chart H-: {}", charts.minus.render()));
            r.line(format!("chart H+: {}", charts.plus.render()));
            if let Some(p2) = &charts.plus2 {
                r.line(format!("chart H+2: {}", p2.render()));
            }
        }
        Err(e) => r.check("exact-identification", false, &e.to_string()),
    }

    // Branch pairing matrix of the crossing edge (used to assemble the
    // disk-potential comparison across the wall).
    if wc.case == CrossingCase::Three {
        let ell = wc.brane_minus.ell;
        let u = u_matrix::<Cyclo>(&(ell as u32), ell).map_err(core_err)?;
        r.line(format!("branch pairing matrix U_{}: {}", ell, render_matrix(&u)));
        let inv: Vec<Vec<Cyclo>> = (0..ell as usize)
            .map(|i| (0..ell as usize).map(|j| u[j][i].conj()).collect())
            .collect();
        r.line(format!(
            "branch pairing inverse: 1/{} * {} (conjugate transpose over {})",
            ell,
            render_matrix(&inv),
            ell
        ));
    }

    let mut numeric_failure: Option<Failure> = None;
    if verify_numeric {
        let mut cfg = VerifyConfig { order, seed, ..VerifyConfig::default() };
        if let Some(t) = tol_match {
            cfg.tol_match = t;
        }
        if let Some(t) = tol_residual {
            cfg.track.tol_residual = t;
        }
        if let Some(p) = path {
            let mags: Result<Vec<f64>, _> = p.split(',').map(|s| s.trim().parse::<f64>()).collect();
            let mags = mags.map_err(|_| usage("--path expects comma-separated magnitudes"))?;
            if let Some(last) = mags.last() {
                cfg.end_mag = Some(*last);
            }
        }
        let rep = verify_octc(&ffp.fan, &ffm.fan, &wc, &cfg).map_err(core_err)?;
        for c in &rep.checks {
            r.check(&format!("numeric-{}", c.name), c.pass, &c.detail);
            if !c.pass && c.detail.contains("tracking") {
                numeric_failure = Some(numfail(format!("{}: {}", c.name, c.detail)));
            }
        }
        if !rep.permutation.is_empty() {
            r.line(format!("branch permutation: {:?}", rep.permutation));
        }
        if let Some(w) = &rep.monodromy_word {
            r.line(format!("monodromy word for the inverse permutation: {:?}", w));
        }
    }
    let pass = r.finish(out)?;
    if let Some(f) = numeric_failure {
        return Err(f);
    }
    Ok(pass)
}

fn cmd_monodromy(
    fan: &Option<String>,
    edge: &Option<String>,
    flag: &Option<usize>,
    ell: Option<i64>,
    seed: u64,
    tol_residual: Option<f64>,
    out: &Option<PathBuf>,
) -> Result<bool, Failure> {
    let (ell, label) = match fan {
        Some(name) => {
            let ff = load(name)?;
            validated_gkz(&ff)?;
            let (brane, _) = resolve_brane(&ff, edge, flag, &None)?;
            (brane.ell, format!("{} edge [{} {}]", name, brane.edge.0 + 1, brane.edge.1 + 1))
        }
        None => {
            let e = ell.ok_or_else(|| usage("pass a fan or --ell"))?;
            (e, format!("--ell {}", e))
        }
    };
    if ell < 1 {
        return Err(usage("edge order must be at least 1"));
    }
    let mut r = Report::new(&format!("monodromy {}", label));
    let vars: Vec<String> = (1..ell).map(|j| format!("w{}", j)).collect();
    let mids = if vars.is_empty() {
        String::new()
    } else {
        format!(" + {}", vars.iter().enumerate().map(|(j, v)| if j == 0 { format!("{}*y", v) } else { format!("{}*y^{}", v, j + 1) }).collect::<Vec<_>>().join(" + "))
    };
    r.line(format!("restricted equation: 1{} + y^{}", mids, ell));
    if ell == 1 {
        r.check("transitivity", true, "single branch, trivial group");
        return r.finish(out);
    }
    let curve = restricted_numeric_curve(ell);
    // Generic small base point, deterministic in the seed.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base: Vec<Complex64> = (1..ell)
        .map(|_| {
            let mag: f64 = rng.gen_range(0.005..0.025);
            let phase: f64 = rng.gen_range(0.3..5.8);
            Complex64::new(mag * phase.cos(), mag * phase.sin())
        })
        .collect();
    let bs: Vec<String> = base.iter().map(|b| format!("({:.6}{:+.6}i)", b.re, b.im)).collect();
    r.line(format!("base point: [{}]", bs.join(", ")));
    let mut cfg = TrackConfig::default();
    if let Some(t) = tol_residual {
        cfg.tol_residual = t;
    }
    let roots = curve.roots_at(&base, cfg.tol_residual).map_err(core_err)?;
    let rep = monodromy_check(&curve, &base, &roots, 0, &cfg).map_err(core_err)?;
    r.line(format!("discriminant points: {}", rep.disc_points.len()));
    for (i, g) in rep.generators.iter().enumerate() {
        r.line(format!("loop {}: permutation {:?}", i + 1, g));
    }
    r.line(format!("group order: {}", rep.group.len()));
    r.check(
        "transitivity",
        rep.transitive,
        if rep.transitive { "the loops connect every branch" } else { "orbit of branch 1 is proper" },
    );
    r.finish(out)
}

fn first_comment(text: &str) -> &str {
    for line in text.lines() {
        if let Some(rest) = line.trim().strip_prefix('#') {
            return rest.trim();
        }
    }
    ""
}

fn cmd_examples(args: &[String]) -> Result<bool, Failure> {
    match args {
        [] => {
            println!("bundled fans ({} entries):", fanfile::CORPUS.len());
            for (name, text) in fanfile::CORPUS {
                println!("  {:<12} {}", name, first_comment(text));
            }
            println!("  {:<12} {}", "an N", "generator: transverse A_N orbifold chart");
            Ok(true)
        }
        [name] if fanfile::corpus_text(name).is_some() => {
            print!("{}", fanfile::corpus_text(name).unwrap());
            Ok(true)
        }
        [gen, n] if gen == "an" => {
            let n: i64 = n.parse().map_err(|_| usage("an N: N must be a positive integer"))?;
            if n < 1 {
                return Err(usage("an N: N must be at least 1"));
            }
            let fan = octc_core::fixtures::an(n);
            let spec = BraneSpec { edge: (1, 2), framing: 0, cone: None };
            print!("{}", fanfile::render(&format!("an{}", n), &fan, &[spec]));
            Ok(true)
        }
        [other] => Err(usage(format!("unknown example '{}'", other))),
        _ => Err(usage("usage: examples [NAME | an N]")),
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match &cli.cmd {
        Cmd::Validate { fan, out } => cmd_validate(fan, out),
        Cmd::Curve { fan, edge, flag, framing, symbolic_framing, out } => {
            cmd_curve(fan, edge, flag, framing, *symbolic_framing, out)
        }
        Cmd::Disk { fan, edge, flag, framing, order, backend, out } => {
            cmd_disk(fan, edge, flag, framing, *order, backend, out)
        }
        Cmd::Wallcross {
            plus,
            minus,
            edge,
            flag,
            framing,
            verify_exact,
            verify_numeric,
            symbolic_framing,
            order,
            seed,
            tol_match,
            tol_residual,
            path,
            out,
        } => cmd_wallcross(
            plus,
            minus,
            edge,
            flag,
            framing,
            *verify_exact,
            *verify_numeric,
            *symbolic_framing,
            *order,
            *seed,
            *tol_match,
            *tol_residual,
            path,
            out,
        ),
        Cmd::Monodromy { fan, edge, flag, ell, seed, tol_residual, out } => {
            cmd_monodromy(fan, edge, flag, *ell, *seed, *tol_residual, out)
        }
        Cmd::Examples { args } => cmd_examples(args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // Help and version requests are not usage errors.
            use clap::error::ErrorKind;
            let code: u8 = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
