//! One function per subcommand: parameters in, CSV table out.

use pslab_core::counting::{
    goldbach3_count_with, kap_count_with, gowers_norm_with, local_density, predicted_main_term, AffineLinearSystem,
    ConvexBody, WeightTable,
};
use pslab_core::expsum::{
    check_sawtooth, discorrelation_with, erdos_turan_check, vaaler_approx, vdc_check, PhaseFunction, Twist,
};
use pslab_core::majorant::{
    linear_forms_average_with, majorization_check, multi_linear_phase_sum, MajorantParams, NuTable, ZnSystem,
};
use pslab_core::nilseq::{HeisElem, HeisenbergSequence, LipschitzFn};
use pslab_core::numeric::{e, Dd};
use pslab_core::ps_core::{PsParameter, PsSet, DEFAULT_PRECISION_CAP};
use pslab_core::sieve::{primes_up_to, LambdaTable};
use pslab_core::{Complex64, Executor};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::cache::{self, SieveCache};
use crate::error::CliError;
use crate::exec::Pool;
use crate::output::{real, Table};
use crate::params::{parse_i64, parse_list, parse_real, parse_u64, Params};

pub struct Context {
    pub pool: Pool,
    pub cache: Option<SieveCache>,
    pub seed: u64,
}

pub struct Outcome {
    pub table: Table,
    /// The PS parameter, for commands that test membership.
    pub gamma: Option<PsParameter>,
}

type Runner = fn(&Params, &Context) -> Result<Outcome, CliError>;

pub struct CommandSpec {
    pub name: &'static str,
    pub keys: &'static [&'static str],
    pub run: Runner,
}

pub const COMMANDS: &[CommandSpec] = &[
    CommandSpec { name: "ps-count", keys: &["gamma", "x"], run: ps_count },
    CommandSpec { name: "ap-count", keys: &["k", "x", "weight", "gamma"], run: ap_count },
    CommandSpec { name: "goldbach3", keys: &["x", "weight", "gamma"], run: goldbach3 },
    CommandSpec { name: "discorrelate", keys: &["gamma", "x", "twist", "alpha", "h"], run: discorrelate },
    CommandSpec { name: "sawtooth-check", keys: &["h", "grid"], run: sawtooth_check },
    CommandSpec { name: "vdc-check", keys: &["h", "gamma", "x", "y", "delta"], run: vdc },
    CommandSpec { name: "et-check", keys: &["x", "j", "sequences"], run: et_check },
    CommandSpec { name: "gowers", keys: &["x", "s", "input", "gamma", "w", "b"], run: gowers },
    CommandSpec { name: "majorant-check", keys: &["x", "r", "gamma", "w", "b", "m", "c"], run: majorant_check },
    CommandSpec { name: "lff-average", keys: &["x", "r", "gamma", "w", "b", "m", "system", "samples"], run: lff_average },
    CommandSpec { name: "phase-sum", keys: &["h", "forms", "gamma", "lo", "hi"], run: phase_sum },
    CommandSpec { name: "local-density", keys: &["system", "k", "p"], run: local_density_cmd },
];

pub fn find(name: &str) -> Option<&'static CommandSpec> {
    COMMANDS.iter().find(|c| c.name == name)
}

fn get<'a>(v: &'a Option<String>, default: &'a str) -> &'a str {
    v.as_deref().unwrap_or(default)
}

fn gamma_param(p: &Params, default: &str) -> Result<PsParameter, CliError> {
    Ok(PsParameter::parse(get(&p.gamma, default), DEFAULT_PRECISION_CAP)?)
}

fn lambda_table(ctx: &Context, hi: u64) -> Result<LambdaTable, CliError> {
    Ok(cache::lambda_table(&ctx.pool, hi.max(2), ctx.cache.as_ref())?)
}

fn to_i64(key: &str, v: u64) -> Result<i64, CliError> {
    i64::try_from(v).map_err(|_| CliError::Config(format!("`{key}` is out of range")))
}

fn ps_count(p: &Params, ctx: &Context) -> Result<Outcome, CliError> {
    let gamma = gamma_param(p, "10/11")?;
    let x = parse_u64("x", get(&p.x, "1e6"))?;
    if x < 2 {
        return Err(CliError::Config("`x` must be at least 2".into()));
    }
    let mut checkpoints: Vec<u64> = (2..19).map(|e| 10u64.pow(e)).take_while(|&c| c < x).collect();
    checkpoints.push(x);
    let table = lambda_table(ctx, x)?;
    let ps = PsSet::build(&ctx.pool, x, &gamma)?;
    let g = gamma.gamma();
    let mut out = Table::new(&["x", "pi_c", "x^gamma/log x", "ratio"]);
    let mut count = 0u64;
    let mut primes = table.primes().iter().peekable();
    for &c in &checkpoints {
        while let Some(&&q) = primes.peek() {
            if q > c {
                break;
            }
            if ps.contains(q) {
                count += 1;
            }
            primes.next();
        }
        let cf = c as f64;
        let model = cf.powf(g) / cf.ln();
        out.push(vec![c.to_string(), count.to_string(), real(model), real(count as f64 / model)]);
    }
    Ok(Outcome {
        table: out,
        gamma: Some(gamma),
    })
}

enum Weight {
    Lambda,
    LambdaGamma,
    Ones,
    Compare,
}

fn weight_kind(p: &Params) -> Result<Weight, CliError> {
    match get(&p.weight, "compare") {
        "lambda" => Ok(Weight::Lambda),
        "lambda-gamma" => Ok(Weight::LambdaGamma),
        "ones" => Ok(Weight::Ones),
        "compare" => Ok(Weight::Compare),
        other => Err(CliError::Config(format!(
            "unknown weight `{other}` (expected lambda, lambda-gamma, ones, compare)"
        ))),
    }
}

/// Shared driver for `ap-count` and `goldbach3`.
fn weighted_counts(
    p: &Params,
    ctx: &Context,
    size_label: &str,
    size: i64,
    hi: u64,
    sys: &AffineLinearSystem,
    body: &ConvexBody,
    count: &dyn Fn(&WeightTable) -> Result<f64, CliError>,
    default_gamma: &str,
) -> Result<Outcome, CliError> {
    let weight = weight_kind(p)?;
    let table = lambda_table(ctx, hi)?;
    let main = predicted_main_term(sys, body)?;
    let needs_gamma = matches!(weight, Weight::LambdaGamma | Weight::Compare);
    let gamma = if needs_gamma { Some(gamma_param(p, default_gamma)?) } else { None };
    let lg = |g: &PsParameter| WeightTable::lambda_gamma(&ctx.pool, &table, g, hi);
    let sys_desc = sys.descriptor();
    let out = match weight {
        Weight::Compare => {
            let g = gamma.as_ref().unwrap();
            let cl = count(&WeightTable::von_mangoldt(&table, hi)?)?;
            let cg = count(&lg(g)?)?;
            let norm = (size as f64).powi(sys.dim() as i32);
            let mut t = Table::new(&[
                "system",
                size_label,
                "gamma",
                "count_lambda",
                "count_lambda_gamma",
                "predicted_main_term",
                "normalized_gap",
            ]);
            let (a, b) = g.ratio();
            t.push(vec![
                sys_desc,
                size.to_string(),
                format!("{a}/{b}"),
                real(cl),
                real(cg),
                real(main),
                real((cg - cl) / norm),
            ]);
            t
        }
        ref w => {
            let (name, wt) = match w {
                Weight::Lambda => ("lambda", WeightTable::von_mangoldt(&table, hi)?),
                Weight::LambdaGamma => ("lambda-gamma", lg(gamma.as_ref().unwrap())?),
                _ => ("ones", WeightTable::ones(hi)),
            };
            let c = count(&wt)?;
            let mut t = Table::new(&["system", size_label, "weight", "count", "predicted_main_term"]);
            t.push(vec![sys_desc, size.to_string(), name.into(), real(c), real(main)]);
            t
        }
    };
    Ok(Outcome { table: out, gamma })
}

fn ap_count(p: &Params, ctx: &Context) -> Result<Outcome, CliError> {
    let k = parse_u64("k", get(&p.k, "3"))? as usize;
    let x = to_i64("x", parse_u64("x", get(&p.x, "1000"))?)?;
    if !(3..=64).contains(&k) || x < 1 {
        return Err(CliError::Config("need 3 ≤ k ≤ 64 and x ≥ 1".into()));
    }
    let sys = AffineLinearSystem::k_ap(k, x)?;
    let body = ConvexBody::k_ap_simplex(k, x);
    let count = |w: &WeightTable| Ok(kap_count_with(&ctx.pool, k, x, w)?);
    weighted_counts(p, ctx, "X", x, x as u64, &sys, &body, &count, "199/200")
}

fn goldbach3(p: &Params, ctx: &Context) -> Result<Outcome, CliError> {
    let n = to_i64("x", parse_u64("x", get(&p.x, "10001"))?)?;
    if n < 3 {
        return Err(CliError::Config("`x` must be at least 3".into()));
    }
    let sys = AffineLinearSystem::goldbach3(n)?;
    let body = ConvexBody::goldbach_simplex(n);
    let count = |w: &WeightTable| Ok(goldbach3_count_with(&ctx.pool, n, w)?);
    weighted_counts(p, ctx, "N", n, n as u64, &sys, &body, &count, "99/100")
}

fn heisenberg_twist(k: i64) -> Twist {
    let d = |v: f64| Dd::from_f64(v);
    let seq = HeisenbergSequence::new(
        HeisElem::identity(),
        HeisElem::new(d(std::f64::consts::SQRT_2), d(3f64.sqrt()), d(0.0)),
        HeisElem::new(d(0.0), d(0.0), d(5f64.sqrt())),
    )
    .expect("g2 is central");
    Twist::Heisenberg {
        seq,
        f: LipschitzFn::HeisenbergVertical { k },
    }
}

fn discorrelate(p: &Params, ctx: &Context) -> Result<Outcome, CliError> {
    let gamma = gamma_param(p, "99/100")?;
    let ns = parse_list("x", get(&p.x, "1e5"), parse_u64)?;
    let twist = match get(&p.twist, "linear") {
        "linear" => Twist::Phase(PhaseFunction::linear(parse_real("alpha", get(&p.alpha, "sqrt2"))?)),
        "heisenberg" => heisenberg_twist(parse_i64("h", get(&p.h, "1"))?),
        other => return Err(CliError::Config(format!("unknown twist `{other}` (expected linear, heisenberg)"))),
    };
    if p.alpha.is_some() && !matches!(twist, Twist::Phase(_)) || p.h.is_some() && matches!(twist, Twist::Phase(_)) {
        return Err(CliError::Config("`alpha` goes with the linear twist and `h` with heisenberg".into()));
    }
    let max = *ns.iter().max().unwrap();
    let table = lambda_table(ctx, max)?;
    let mut out = Table::new(&["N", "gamma", "phase_descriptor", "S1_re", "S1_im", "S2_re", "S2_im", "delta"]);
    for &n in &ns {
        let d = discorrelation_with(&ctx.pool, &gamma, n, &twist, &table)?;
        out.push(vec![
            d.n.to_string(),
            d.gamma,
            d.phase_descriptor,
            real(d.s1.re),
            real(d.s1.im),
            real(d.s2.re),
            real(d.s2.im),
            real(d.delta),
        ]);
    }
    Ok(Outcome {
        table: out,
        gamma: Some(gamma),
    })
}

fn sawtooth_check(p: &Params, ctx: &Context) -> Result<Outcome, CliError> {
    let hs = parse_list("h", get(&p.h, "8,64,512"), parse_u64)?;
    let grid = parse_u64("grid", get(&p.grid, "100000"))? as usize;
    let mut out = Table::new(&["H", "grid", "min_slack", "max_abs_error", "mean_abs_error", "max_b", "4/H"]);
    for h in hs {
        let h = u32::try_from(h).map_err(|_| CliError::Config("`h` is out of range".into()))?;
        let s = vaaler_approx(h)?;
        let r = check_sawtooth(&s, grid, ctx.seed)?;
        out.push(vec![
            h.to_string(),
            grid.to_string(),
            real(r.min_slack),
            real(r.max_abs_error),
            real(r.mean_abs_error),
            real(s.max_b()),
            real(4.0 / h as f64),
        ]);
    }
    Ok(Outcome { table: out, gamma: None })
}

fn vdc(p: &Params, ctx: &Context) -> Result<Outcome, CliError> {
    let h = parse_real("h", get(&p.h, "1"))?;
    let theta = parse_real("gamma", get(&p.gamma, "3/2"))?;
    let x = parse_u64("x", get(&p.x, "1e6"))?;
    let y = parse_u64("y", get(&p.y, "1e5"))?;
    let f = PhaseFunction::monomial(h, theta)?;
    let delta = match &p.delta {
        Some(d) => parse_real("delta", d)?,
        None => f.second_derivative(x as f64 + y as f64 / 2.0).abs(),
    };
    let r = vdc_check(&ctx.pool, &f, x, y, delta)?;
    let mut out = Table::new(&["h", "gamma", "X", "Y", "delta", "lhs", "rhs", "ratio"]);
    out.push(vec![
        real(h),
        real(theta),
        x.to_string(),
        y.to_string(),
        real(delta),
        real(r.lhs),
        real(r.rhs),
        real(r.ratio),
    ]);
    Ok(Outcome { table: out, gamma: None })
}

/// The `i`-th random sequence of `n` points and its test arc.
pub fn et_sequence(seed: u64, i: u64, n: usize) -> (Vec<f64>, (f64, f64)) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    let points = (0..n).map(|_| rng.gen::<f64>()).collect();
    let a: f64 = rng.gen();
    let len: f64 = rng.gen();
    (points, (a, a + len))
}

fn et_check(p: &Params, ctx: &Context) -> Result<Outcome, CliError> {
    let n = parse_u64("x", get(&p.x, "1e4"))? as usize;
    let js = parse_list("j", get(&p.j, "1,10,100"), parse_u64)?;
    let count = parse_u64("sequences", get(&p.sequences, "100"))?;
    if js.iter().any(|&j| j == 0 || j > u32::MAX as u64) {
        return Err(CliError::Config("`j` must be positive".into()));
    }
    let rows = ctx.pool.map_indexed(count as usize, |i| {
        let (points, arc) = et_sequence(ctx.seed, i as u64, n);
        js.iter()
            .map(|&j| erdos_turan_check(&points, arc, j as u32).map(|r| (i, j, arc, r)))
            .collect::<Result<Vec<_>, _>>()
    });
    let mut out = Table::new(&["sequence", "J", "a", "b", "lhs", "rhs"]);
    for r in rows {
        for (i, j, (a, b), rep) in r? {
            out.push(vec![i.to_string(), j.to_string(), real(a), real(b), real(rep.lhs), real(rep.rhs)]);
        }
    }
    Ok(Outcome { table: out, gamma: None })
}

fn gowers(p: &Params, ctx: &Context) -> Result<Outcome, CliError> {
    let n = parse_u64("x", get(&p.x, "97"))?;
    let s = parse_u64("s", get(&p.s, "2"))? as u32;
    let input = get(&p.input, "ones");
    if n == 0 {
        return Err(CliError::Config("`x` must be positive".into()));
    }
    if input != "lambda-gamma-diff" && (p.gamma.is_some() || p.w.is_some() || p.b.is_some()) {
        return Err(CliError::Config("`gamma`, `w` and `b` only apply to input lambda-gamma-diff".into()));
    }
    let mut gamma = None;
    let f: Vec<Complex64> = match input {
        "ones" => vec![Complex64::new(1.0, 0.0); n as usize],
        "character" => (0..n).map(|x| e(x as f64 / n as f64)).collect(),
        "random-sign" => {
            let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
            (0..n)
                .map(|_| Complex64::new(if rng.gen::<bool>() { 1.0 } else { -1.0 }, 0.0))
                .collect()
        }
        "lambda-gamma-diff" => {
            let g = gamma_param(p, "99/100")?;
            let wt = pslab_core::sieve::build_wtrick(parse_u64("w", get(&p.w, "2"))?)?;
            let b = parse_u64("b", get(&p.b, "1"))?;
            if !wt.is_residue(b) {
                return Err(CliError::Config(format!("b = {b} is not a unit mod {}", wt.modulus())));
            }
            let top = wt.modulus() * (n - 1) + b;
            let table = lambda_table(ctx, top)?;
            let lam = WeightTable::von_mangoldt(&table, top)?;
            let lg = WeightTable::lambda_gamma(&ctx.pool, &table, &g, top)?;
            let v: Vec<Complex64> = (0..n)
                .map(|i| {
                    let m = (wt.modulus() * i + b) as i64;
                    let d = lg.get(m).unwrap_or(0.0) - lam.get(m).unwrap_or(0.0);
                    Complex64::new(wt.density() * d, 0.0)
                })
                .collect();
            gamma = Some(g);
            v
        }
        other => {
            return Err(CliError::Config(format!(
                "unknown input `{other}` (expected ones, character, random-sign, lambda-gamma-diff)"
            )))
        }
    };
    let norm = gowers_norm_with(&ctx.pool, &f, s)?;
    let mut out = Table::new(&["N", "s", "input", "norm"]);
    out.push(vec![n.to_string(), s.to_string(), input.into(), real(norm)]);
    Ok(Outcome { table: out, gamma })
}

fn majorant_params(p: &Params) -> Result<MajorantParams, CliError> {
    let n = parse_u64("x", get(&p.x, "50021"))?;
    let gamma = gamma_param(p, "99/100")?;
    let r = match &p.r {
        Some(r) => parse_real("r", r)?,
        None => (n as f64).powf(0.05),
    };
    Ok(MajorantParams::new(
        n,
        r,
        gamma,
        parse_u64("w", get(&p.w, "3"))?,
        parse_u64("b", get(&p.b, "1"))?,
        parse_u64("m", get(&p.m, "2"))? as u32,
    )?)
}

fn params_hash(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

fn majorant_check(p: &Params, ctx: &Context) -> Result<Outcome, CliError> {
    let mp = majorant_params(p)?;
    let c = parse_real("c", get(&p.c, "1"))?;
    let nu = NuTable::build(&ctx.pool, &mp)?;
    let report = majorization_check(&mp, &nu, (mp.window_lo(), mp.n - 1), c)?;
    let mut out = Table::new(&["params_hash", "N", "R", "nu_mean", "window_lo", "checked", "min_ratio", "c"]);
    out.push(vec![
        params_hash(&mp.descriptor()),
        mp.n.to_string(),
        real(mp.r),
        real(nu.mean()),
        mp.window_lo().to_string(),
        report.checked.to_string(),
        real(report.min_ratio),
        real(c),
    ]);
    Ok(Outcome {
        table: out,
        gamma: Some(mp.gamma),
    })
}

/// Linear parts of a preset or JSON matrix system.
fn system_matrix(spec: &str, k: usize) -> Result<Vec<Vec<i64>>, CliError> {
    Ok(match spec {
        "single" => vec![vec![1]],
        "two-form" => vec![vec![1, 0], vec![1, 1]],
        "3-ap" => (0..3).map(|i| vec![1, i]).collect(),
        "k-ap" => (0..k as i64).map(|i| vec![1, i]).collect(),
        "goldbach3" => vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
        m if m.trim_start().starts_with('[') => serde_json::from_str(m)
            .map_err(|e| CliError::Config(format!("system matrix is not a list of integer rows: {e}")))?,
        other => {
            return Err(CliError::Config(format!(
                "unknown system `{other}` (expected single, two-form, 3-ap, k-ap, goldbach3, or a JSON matrix)"
            )))
        }
    })
}

fn lff_average(p: &Params, ctx: &Context) -> Result<Outcome, CliError> {
    let mp = majorant_params(p)?;
    let system = get(&p.system, "two-form");
    let linear = system_matrix(system, 3)?;
    let zeros = vec![0; linear.len()];
    let sys = ZnSystem::new(mp.n, linear, zeros)?;
    let samples = parse_u64("samples", get(&p.samples, "1e6"))?;
    let nu = NuTable::build(&ctx.pool, &mp)?;
    let est = linear_forms_average_with(&ctx.pool, &sys, &nu, samples, ctx.seed)?;
    let key = format!("{};system={};samples={};seed={}", mp.descriptor(), sys.descriptor(), samples, ctx.seed);
    let mut out = Table::new(&["params_hash", "system_descriptor", "average", "standard_error", "N"]);
    out.push(vec![
        params_hash(&key),
        sys.descriptor(),
        real(est.average),
        real(est.std_error),
        mp.n.to_string(),
    ]);
    Ok(Outcome {
        table: out,
        gamma: Some(mp.gamma),
    })
}

fn parse_form(key: &str, s: &str) -> Result<(i64, i64), CliError> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| CliError::Config(format!("`{key}` entries look like a:b, got `{s}`")))?;
    Ok((parse_i64(key, a)?, parse_i64(key, b)?))
}

fn phase_sum(p: &Params, ctx: &Context) -> Result<Outcome, CliError> {
    let h = parse_list("h", get(&p.h, "1"), parse_i64)?;
    let forms = parse_list("forms", get(&p.forms, "1:0"), parse_form)?;
    let gamma = parse_real("gamma", get(&p.gamma, "0.95"))?;
    let lo = parse_i64("lo", get(&p.lo, "1"))?;
    let hi = parse_i64("hi", get(&p.hi, "1e6"))?;
    let r = multi_linear_phase_sum(&ctx.pool, &h, &forms, gamma, lo, hi)?;
    let hs: Vec<String> = h.iter().map(|v| v.to_string()).collect();
    let fs: Vec<String> = forms.iter().map(|(a, b)| format!("{a}:{b}")).collect();
    let mut out = Table::new(&["h", "forms", "gamma", "lo", "hi", "sum_re", "sum_im", "normalized"]);
    out.push(vec![
        hs.join(" "),
        fs.join(" "),
        real(gamma),
        lo.to_string(),
        hi.to_string(),
        real(r.sum.re),
        real(r.sum.im),
        real(r.normalized),
    ]);
    Ok(Outcome { table: out, gamma: None })
}

fn local_density_cmd(p: &Params, _ctx: &Context) -> Result<Outcome, CliError> {
    let k = parse_u64("k", get(&p.k, "3"))? as usize;
    let system = get(&p.system, "k-ap");
    if p.k.is_some() && system != "k-ap" {
        return Err(CliError::Config("`k` only applies to the k-ap system".into()));
    }
    let linear = system_matrix(system, k)?;
    let bound = linear.iter().flatten().map(|c| c.abs()).max().unwrap_or(1).max(1);
    let sys = AffineLinearSystem::new(linear.clone(), vec![0; linear.len()], bound, 1)?;
    let pmax = parse_u64("p", get(&p.p, "13"))?;
    let mut out = Table::new(&["p", "beta_p", "beta_p_decimal"]);
    for q in primes_up_to(pmax) {
        let beta = local_density(&sys, q)?;
        let approx = num_ratio_to_f64(&beta);
        out.push(vec![q.to_string(), beta.to_string(), real(approx)]);
    }
    Ok(Outcome { table: out, gamma: None })
}

fn num_ratio_to_f64<T: num_traits::ToPrimitive>(r: &T) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
