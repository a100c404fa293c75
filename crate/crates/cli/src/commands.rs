use std::fmt;

use quadzeta::complexzeros::{
    hardy_scan, locate_zeros, nonreal_census, refine_zero, rvm_compare, WindingOptions, ZeroMethod,
    ZeroRecord,
};
use quadzeta::dirichlet::q_via_characters;
use quadzeta::identities::{
    closed_form_residual, dq_da, fe_grid, fe_residual, monotonicity_grid, positivity_sigma_gt1,
    SpecialAlpha, FE_SIGMAS, FE_TS,
};
use quadzeta::realzeros::{classify_real, find_a0, find_beta_z, scan_real_zeros, sigma_derivatives};
use quadzeta::sfcore::{periodic_pair_rational, q_eval, real, xi_q, z_eval};
use quadzeta::{AlphaParam, ComplexValue, ErrorKind, EvalSettings};
use rand::{Rng, SeedableRng};

use crate::input::AlphaArg;
use crate::output::{emit, Cell, Format, Table};
use crate::store::{self, ZeroStoreRecord};
use crate::{Cli, Command, Figure, Suite};

#[derive(Debug)]
pub enum CliError {
    Core(quadzeta::Error),
    Usage(String),
    Io(std::io::Error),
    /// A verification suite ran but some point missed its threshold.
    Failed(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e.kind() {
                ErrorKind::Domain => 1,
                ErrorKind::Numerical => 2,
                ErrorKind::Argument => 3,
            },
            CliError::Usage(_) => 3,
            CliError::Io(e) => match e.kind() {
                std::io::ErrorKind::NotFound | std::io::ErrorKind::InvalidData => 3,
                _ => 2,
            },
            CliError::Failed(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Failed(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl From<quadzeta::Error> for CliError {
    fn from(e: quadzeta::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

type Res<T> = Result<T, CliError>;

const VERIFY_TOL: f64 = 1e-9;

fn settings(cli: &Cli) -> Res<EvalSettings> {
    let mut cfg = EvalSettings::default();
    if let Some(tol) = cli.global.tol {
        cfg.abs_tol = tol;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn grid_or(cli: &Cli, default: usize) -> usize {
    cli.global.grid.unwrap_or(default)
}

fn finish(cli: &Cli, table: &Table) -> Res<()> {
    emit(&table.render(cli.global.format), cli.global.out.as_deref())?;
    Ok(())
}

pub fn run(cli: &Cli) -> Res<()> {
    match &cli.command {
        Command::Eval { s, a } => eval(cli, s.0, a),
        Command::Verify { suite, random } => verify(cli, *suite, *random),
        Command::ScanReal { a, lo, hi } => scan_real(cli, a, *lo, *hi),
        Command::FindA0 => threshold(cli),
        Command::Classify { a } => classify(cli, a),
        Command::BetaZ { a } => beta_z(cli, a),
        Command::Count { t, a } => count(cli, *t, a),
        Command::Rvm { t, a } => rvm(cli, *t, a),
        Command::Hardy {
            a,
            t_lo,
            t_hi,
            step,
            store,
        } => {
            let cfg = settings(cli)?;
            let zeros = hardy_scan(a.0, *t_lo, *t_hi, *step, &cfg)?;
            zero_output(cli, "hardy", a, &zeros, store.as_deref())
        }
        Command::Locate {
            a,
            rect,
            depth,
            resume,
            store,
        } => {
            let cfg = settings(cli)?;
            let zeros = match (resume, rect) {
                (Some(path), _) => resume_zeros(path, a, rect.map(|r| r.0), &cfg)?,
                (None, Some(r)) => locate_zeros(&r.0, a.0, *depth, &cfg)?,
                (None, None) => return Err(CliError::Usage("locate needs --rect or --resume".into())),
            };
            zero_output(cli, "locate", a, &zeros, store.as_deref())
        }
        Command::Decompose { s, a } => decompose(cli, s.0, a),
        Command::ExportFigure { kind, a, lo, hi } => export_figure(cli, *kind, a.as_ref(), *lo, *hi),
    }
}

fn eval(cli: &Cli, s: ComplexValue, a: &AlphaArg) -> Res<()> {
    let cfg = settings(cli)?;
    let z = z_eval(s, a.0, &cfg)?;
    let (p, method) = match a.0.fraction() {
        Some((r, q)) if q >= 2 => {
            let p = periodic_pair_rational(s, r, q, &cfg)?;
            (p, "rational".to_string())
        }
        _ => {
            let v = quadzeta::sfcore::zq_eval(s, a.0, &cfg)?;
            (v.p, format!("{:?}", v.q.method))
        }
    };
    let q = 0.5 * (z.value + p.value);
    let xi = xi_q(s, a.0, &cfg)?.value;
    let (dec, frac) = a.describe();
    let mut t = Table::new(
        "eval",
        &[
            "s_re", "s_im", "a", "a_fraction", "z_re", "z_im", "p_re", "p_im", "q_re", "q_im",
            "xi_re", "xi_im", "est_error", "method",
        ],
    );
    t.push(vec![
        s.re.into(),
        s.im.into(),
        dec.into(),
        frac.into(),
        z.value.re.into(),
        z.value.im.into(),
        p.value.re.into(),
        p.value.im.into(),
        q.re.into(),
        q.im.into(),
        xi.re.into(),
        xi.im.into(),
        (0.5 * (z.est_error + p.est_error)).into(),
        method.into(),
    ]);
    finish(cli, &t)
}

fn random_points(cli: &Cli, n: usize) -> Vec<(ComplexValue, f64)> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(cli.global.seed);
    (0..n)
        .map(|_| {
            let s = ComplexValue::new(rng.gen_range(-2.0..3.0), rng.gen_range(0.0..30.0));
            (s, 0.5 - rng.gen_range(0.0..0.49))
        })
        .collect()
}

fn verify(cli: &Cli, suite: Suite, random: usize) -> Res<()> {
    let cfg = EvalSettings::default();
    let tol = cli.global.tol.unwrap_or(VERIFY_TOL);
    let extra = random_points(cli, random);
    let mut failures = 0usize;
    let mut check = |ok: bool| {
        if !ok {
            failures += 1;
        }
        ok
    };
    let table = match suite {
        Suite::Fe => {
            let mut t = Table::new("verify fe", &["s_re", "s_im", "a", "rel_residual", "pass"]);
            for (s, a) in fe_grid().into_iter().chain(extra) {
                let r = fe_residual(s, AlphaParam::quadrilateral(a)?, &cfg)?.q_equation;
                let ok = check(r.rel_residual <= tol);
                t.push(vec![s.re.into(), s.im.into(), a.into(), r.rel_residual.into(), ok.into()]);
            }
            t
        }
        Suite::ClosedForm => {
            let mut t = Table::new(
                "verify closed-form",
                &["a", "s_re", "s_im", "z_rel_residual", "p_rel_residual", "pass"],
            );
            let mut points: Vec<ComplexValue> = Vec::new();
            for &sigma in &FE_SIGMAS {
                for &tt in &FE_TS {
                    points.push(ComplexValue::new(sigma, tt));
                }
            }
            points.extend(extra.iter().map(|p| p.0));
            for which in SpecialAlpha::ALL {
                let (r, q) = which.alpha().fraction().expect("exact");
                for &s in &points {
                    let rep = closed_form_residual(s, which, &cfg)?;
                    let ok = check(rep.worst_rel() <= tol);
                    t.push(vec![
                        format!("{r}/{q}").into(),
                        s.re.into(),
                        s.im.into(),
                        rep.z.rel_residual.into(),
                        rep.p.rel_residual.into(),
                        ok.into(),
                    ]);
                }
            }
            t
        }
        Suite::Positivity => {
            let mut t = Table::new("verify positivity", &["sigma", "a", "q", "pass"]);
            let mut points = Vec::new();
            for &sigma in &[1.01, 1.05, 1.1, 1.25, 1.5, 2.0, 3.0, 5.0] {
                for j in 1..=10 {
                    points.push((sigma, j as f64 * 0.05));
                }
            }
            points.extend(extra.iter().map(|p| (1.0 + p.0.re.abs() + 1e-3, p.1)));
            for (sigma, a) in points {
                let alpha = AlphaParam::quadrilateral(a)?;
                let ok = check(positivity_sigma_gt1(sigma, alpha, &cfg)?);
                let q = q_eval(real(sigma), alpha, &cfg)?.value.re;
                t.push(vec![sigma.into(), a.into(), q.into(), ok.into()]);
            }
            t
        }
        Suite::Monotonicity => {
            let mut t = Table::new("verify monotonicity", &["sigma", "a", "dq_da", "pass"]);
            let mut points = monotonicity_grid();
            points.extend(extra.iter().map(|p| (0.05 + 0.9 * (p.0.re + 2.0) / 5.0, p.1.min(0.45))));
            for (sigma, a) in points {
                let d = dq_da(sigma, a, &cfg)?;
                let ok = check(d < 0.0);
                t.push(vec![sigma.into(), a.into(), d.into(), ok.into()]);
            }
            t
        }
    };
    finish(cli, &table)?;
    if failures > 0 {
        return Err(CliError::Failed(format!(
            "{failures} of {} points exceeded the threshold",
            table.rows.len()
        )));
    }
    Ok(())
}

fn scan_real(cli: &Cli, a: &AlphaArg, lo: f64, hi: f64) -> Res<()> {
    let cfg = settings(cli)?;
    let zeros = scan_real_zeros(a.0, lo, hi, grid_or(cli, 1024), &cfg)?;
    let mut t = Table::new(
        "scan-real",
        &["sigma", "residual", "multiplicity", "bracket_lo", "bracket_hi"],
    );
    for z in zeros {
        t.push(vec![
            z.sigma.into(),
            z.residual.into(),
            format!("{:?}", z.multiplicity_hint).into(),
            z.bracket.0.into(),
            z.bracket.1.into(),
        ]);
    }
    finish(cli, &t)
}

fn threshold(cli: &Cli) -> Res<()> {
    let tol = cli.global.tol.unwrap_or(1e-12);
    let a0 = find_a0(tol, &EvalSettings::default())?;
    let mut t = Table::new("find-a0", &["a0", "tol"]);
    t.push(vec![a0.into(), tol.into()]);
    finish(cli, &t)
}

fn classify(cli: &Cli, a: &AlphaArg) -> Res<()> {
    let cfg = settings(cli)?;
    let c = classify_real(a.0, grid_or(cli, 1024), &cfg)?;
    let mut t = Table::new("classify", &["a", "verdict", "sigma", "residual", "multiplicity"]);
    let verdict = format!("{:?}", c.verdict);
    if c.zeros.is_empty() {
        t.push(vec![c.a.into(), verdict.clone().into(), Cell::Missing, Cell::Missing, Cell::Missing]);
    }
    for z in &c.zeros {
        t.push(vec![
            c.a.into(),
            verdict.clone().into(),
            z.sigma.into(),
            z.residual.into(),
            format!("{:?}", z.multiplicity_hint).into(),
        ]);
    }
    finish(cli, &t)
}

fn beta_z(cli: &Cli, a: &AlphaArg) -> Res<()> {
    let cfg = settings(cli)?;
    let z = find_beta_z(a.0, &cfg)?;
    let mut t = Table::new("beta-z", &["a", "sigma", "residual"]);
    t.push(vec![a.0.value().into(), z.sigma.into(), z.residual.into()]);
    finish(cli, &t)
}

fn count(cli: &Cli, t_height: f64, a: &AlphaArg) -> Res<()> {
    let cfg = settings(cli)?;
    let c = nonreal_census(t_height, a.0, &WindingOptions::default(), &cfg)?;
    let real_zeros: Vec<String> = c.real_zeros.iter().map(|x| crate::output::fmt_num(*x)).collect();
    let mut t = Table::new(
        "count",
        &[
            "T", "a", "count", "zeros_in_rectangle", "pole_enclosed", "real_zeros", "sigma_a",
            "perturbed", "boundary_samples", "min_boundary_modulus",
        ],
    );
    t.push(vec![
        c.t.into(),
        c.a.into(),
        c.count.into(),
        c.winding.count.into(),
        c.winding.pole_enclosed.into(),
        real_zeros.join(";").into(),
        c.sigma_a.into(),
        c.winding.perturbed.into(),
        c.winding.boundary_samples.into(),
        c.winding.min_boundary_modulus.into(),
    ]);
    finish(cli, &t)
}

fn rvm(cli: &Cli, t_height: f64, a: &AlphaArg) -> Res<()> {
    let cfg = settings(cli)?;
    let r = rvm_compare(t_height, a.0, &cfg)?;
    let mut t = Table::new(
        "rvm",
        &["T", "a", "empirical_N", "main_term", "diff", "diff_over_logT"],
    );
    t.push(vec![
        r.t.into(),
        r.a.into(),
        r.empirical_n.into(),
        r.main_term.into(),
        r.diff.into(),
        r.diff_over_log_t.into(),
    ]);
    finish(cli, &t)
}

/// Seeds from a store, each polished by Newton. Seeds that converge to the
/// same zero (within 1e-8) are merged, keeping the smaller residual.
fn resume_zeros(
    path: &std::path::Path,
    a: &AlphaArg,
    rect: Option<quadzeta::complexzeros::Rectangle>,
    cfg: &EvalSettings,
) -> Res<Vec<ZeroRecord>> {
    let (dec, frac) = a.describe();
    let mut out: Vec<ZeroRecord> = Vec::new();
    for rec in store::read(path)? {
        let same_a = match (&frac, &rec.a_fraction) {
            (Some(x), Some(y)) => x == y,
            _ => rec.a == dec,
        };
        let stored = ComplexValue::new(rec.s_re, rec.s_im);
        if !same_a || rect.is_some_and(|r| !r.contains(stored, 0.0)) {
            continue;
        }
        let s = refine_zero(stored, a.0, cfg)?;
        let z = ZeroRecord {
            s,
            method: rec.method,
            residual: q_eval(s, a.0, cfg)?.value.norm(),
            newton_refined: true,
            multiplicity: 1,
        };
        match out.iter_mut().find(|o| (o.s - s).norm() <= 1e-8) {
            Some(o) if z.residual < o.residual => *o = z,
            Some(_) => {}
            None => out.push(z),
        }
    }
    out.sort_by(|x, y| x.s.im.total_cmp(&y.s.im).then(x.s.re.total_cmp(&y.s.re)));
    Ok(out)
}

fn zero_output(
    cli: &Cli,
    command: &str,
    a: &AlphaArg,
    zeros: &[ZeroRecord],
    store_path: Option<&std::path::Path>,
) -> Res<()> {
    let records: Vec<ZeroStoreRecord> = zeros.iter().map(|z| ZeroStoreRecord::new(a.describe(), z)).collect();
    if let Some(path) = store_path {
        store::append(path, &records)?;
    }
    if cli.global.format == Format::Jsonl {
        let mut buf = Vec::new();
        for r in &records {
            serde_json::to_writer(&mut buf, r).map_err(std::io::Error::other)?;
            buf.push(b'\n');
        }
        emit(&buf, cli.global.out.as_deref())?;
        return Ok(());
    }
    let mut t = Table::new(
        command,
        &["a", "s_re", "s_im", "method", "residual", "newton_refined", "multiplicity"],
    );
    for z in zeros {
        let method = match z.method {
            ZeroMethod::HardyScan => "HardyScan",
            ZeroMethod::Subdivision => "Subdivision",
        };
        t.push(vec![
            a.describe().0.into(),
            z.s.re.into(),
            z.s.im.into(),
            method.into(),
            z.residual.into(),
            z.newton_refined.into(),
            (z.multiplicity as i64).into(),
        ]);
    }
    finish(cli, &t)
}

fn decompose(cli: &Cli, s: ComplexValue, a: &AlphaArg) -> Res<()> {
    let Some((r, q)) = a.0.fraction() else {
        return Err(CliError::Usage("decompose needs a as an exact fraction r/q".into()));
    };
    let cfg = settings(cli)?;
    let rep = q_via_characters(s, r, q, &cfg)?;
    let mut t = Table::new(
        "decompose",
        &[
            "s_re", "s_im", "r", "q", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "rel_residual",
            "bare_rhs_re", "bare_rhs_im", "bare_rel_residual",
        ],
    );
    t.push(vec![
        s.re.into(),
        s.im.into(),
        (r as i64).into(),
        (q as i64).into(),
        rep.lhs.re.into(),
        rep.lhs.im.into(),
        rep.rhs.re.into(),
        rep.rhs.im.into(),
        rep.rel_residual.into(),
        rep.bare_rhs.re.into(),
        rep.bare_rhs.im.into(),
        rep.bare_rel_residual.into(),
    ]);
    finish(cli, &t)
}

fn export_figure(cli: &Cli, kind: Figure, a: Option<&AlphaArg>, lo: Option<f64>, hi: Option<f64>) -> Res<()> {
    let cfg = settings(cli)?;
    let n = grid_or(cli, 200);
    if n < 2 {
        return Err(CliError::Usage("--grid must be at least 2".into()));
    }
    let (default_lo, default_hi) = match kind {
        Figure::QHalf => (0.01, 0.5),
        Figure::QSigma => (0.0, 0.99),
        Figure::DqSigma | Figure::D2qSigma => (0.0, 0.875),
    };
    let (lo, hi) = (lo.unwrap_or(default_lo), hi.unwrap_or(default_hi));
    if !(lo < hi) {
        return Err(CliError::Usage(format!("need lo < hi, got [{lo}, {hi}]")));
    }
    let alpha = match (kind, a) {
        (Figure::QHalf, _) => None,
        (_, Some(a)) => Some(a.0),
        (_, None) => return Err(CliError::Usage("this figure needs --a".into())),
    };
    let mut t = Table::new("export-figure", &["x", "y"]);
    for k in 0..n {
        let x = lo + (hi - lo) * k as f64 / (n - 1) as f64;
        let y = match (kind, alpha) {
            (Figure::QHalf, _) => q_eval(real(0.5), AlphaParam::quadrilateral(x)?, &cfg)?.value.re,
            (Figure::QSigma, Some(a)) => q_eval(real(x), a, &cfg)?.value.re,
            (Figure::DqSigma, Some(a)) => sigma_derivatives(x, a, &cfg)?.0,
            (Figure::D2qSigma, Some(a)) => sigma_derivatives(x, a, &cfg)?.1,
            _ => unreachable!("parameter checked above"),
        };
        t.push(vec![x.into(), y.into()]);
    }
    finish(cli, &t)
}
