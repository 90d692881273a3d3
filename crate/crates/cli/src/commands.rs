use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use pwilab::connecting::parametric_coefficients;
use pwilab::embedding::{
    ergodic_residual, resonance_check, resonant_angles, symbolic_match, tangent_orbit, xi_estimates,
};
use pwilab::experiments::case_orbit;
use pwilab::iet::DEFAULT_IDOC_DEPTH;
use pwilab::io::{export_orbit, import_orbit, read_json, write_orbit_csv};
use pwilab::{Case, Complex64, ConnectingGraph, Direction, Error, Iet, Pwi, Report, TangentState};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::{
    Command, EmbedCommand, GraphArgs, IetCommand, IetSpec, Output, PlotArgs, PwiCommand, PwiSource,
    ReproduceArgs, Style,
};
use crate::notation::{parse_list, parse_permutation, seed};
use crate::{svg, CliError};

type Res<T> = Result<T, CliError>;

pub fn dispatch(command: Command, stdout: &mut dyn Write) -> Res<i32> {
    match command {
        Command::Iet(c) => iet(c, stdout),
        Command::Pwi(c) => pwi(c, stdout),
        Command::Graph(a) => graph(a, stdout),
        Command::Embed(EmbedCommand::Check {
            source,
            iet,
            seed: s,
            steps,
            level,
            cap,
            alignment,
            output,
        }) => {
            let pwi = load_pwi(&source)?;
            let f = build_iet(&iet)?;
            let report = embed_check(
                &pwi,
                &f,
                seed(s.re, s.im),
                steps,
                level,
                cap,
                alignment.as_deref(),
            )?;
            emit(&output, stdout, &pretty(&report))?;
            Ok(0)
        }
        Command::Reproduce(a) => reproduce(a, stdout),
        Command::Plot(a) => plot(a, stdout),
    }
}

fn build_iet(spec: &IetSpec) -> Res<Iet> {
    let lengths = parse_list::<f64>(&spec.lengths)?;
    let perm = parse_permutation(&spec.perm)?;
    Ok(Iet::new(lengths, perm)?)
}

fn parse_case(name: &str) -> Res<Case> {
    Case::from_str(name).map_err(|e| CliError::Usage(e.to_string()))
}

fn load_pwi(source: &PwiSource) -> Res<Pwi> {
    match (&source.config, &source.case) {
        (Some(path), _) => Ok(read_json(path)?),
        (None, Some(name)) => Ok(parse_case(name)?.system().pwi),
        (None, None) => Err(CliError::Usage(
            "one of --config or --case is required".into(),
        )),
    }
}

fn pretty<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

fn emit(output: &Output, stdout: &mut dyn Write, text: &str) -> Res<()> {
    match &output.out {
        Some(path) => fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn iet(command: IetCommand, stdout: &mut dyn Write) -> Res<i32> {
    match command {
        IetCommand::Apply {
            iet,
            x,
            inverse,
            output,
        } => {
            let f = build_iet(&iet)?;
            let direction = if inverse {
                Direction::Inverse
            } else {
                Direction::Forward
            };
            let y = f.apply(x, direction)?;
            let text = if output.json {
                pretty(&json!({ "x": x, "y": y, "interval": f.locate(x)? + 1 }))
            } else {
                format!("{y}\n")
            };
            emit(&output, stdout, &text)?;
        }
        IetCommand::Orbit {
            iet,
            x,
            steps,
            output,
        } => {
            let f = build_iet(&iet)?;
            let points = f.orbit(x, steps)?;
            let symbols = points
                .iter()
                .map(|&y| f.locate(y).map(|j| j + 1))
                .collect::<Result<Vec<_>, _>>()?;
            let text = if output.json {
                pretty(&json!({ "points": points, "itinerary": symbols }))
            } else {
                let mut s = String::from("n,x,interval\n");
                for (n, (y, j)) in points.iter().zip(&symbols).enumerate() {
                    s.push_str(&format!("{n},{},{j}\n", pwilab::io::format_float(*y)));
                }
                s
            };
            emit(&output, stdout, &text)?;
        }
        IetCommand::Rauzy { iet, level, output } => {
            let mut f = build_iet(&iet)?;
            let mut history = Vec::with_capacity(level);
            let mut last = None;
            for _ in 0..level {
                let step = f.rauzy_step()?;
                history.push(step.kind.as_index());
                f = step.iet.clone();
                last = Some(step);
            }
            let step = last.expect("level is positive");
            let text = if output.json {
                pretty(&json!({
                    "level": level,
                    "type": step.kind.as_index(),
                    "winner": step.winner + 1,
                    "loser": step.loser + 1,
                    "lengths": f.lengths(),
                    "perm": f.perm().one_line(),
                    "history": history,
                }))
            } else {
                format!(
                    "type {}\nlengths {}\nperm {}\n",
                    step.kind.as_index(),
                    join(f.lengths()),
                    join(f.perm().one_line())
                )
            };
            emit(&output, stdout, &text)?;
        }
        IetCommand::Stats {
            iet,
            steps,
            level,
            cap,
            output,
        } => {
            let f = build_iet(&iet)?;
            let stats = f.zero_orbit_statistics(steps)?;
            let frequencies: Vec<f64> = stats.m.iter().map(|&m| m as f64 / steps as f64).collect();
            let p = f.p_sequence(level, cap)?;
            let text = pretty(&json!({
                "total_length": f.total_length(),
                "translations": f.translations(),
                "steps": steps,
                "visits": stats.m,
                "frequencies": frequencies,
                "first_hit": stats.first_hit,
                "p": p,
                "idoc": f.idoc_check(DEFAULT_IDOC_DEPTH),
                "discontinuous_embedding": f.discontinuous_embedding_predicate(),
            }));
            emit(&output, stdout, &text)?;
        }
    }
    Ok(0)
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn pwi(command: PwiCommand, stdout: &mut dyn Write) -> Res<i32> {
    match command {
        PwiCommand::Orbit {
            source,
            seed: s,
            steps,
            transient,
            orbit_out,
            output,
        } => {
            let pwi = load_pwi(&source)?;
            let rec = pwi.orbit(seed(s.re, s.im), steps, transient);
            if let Some(path) = &orbit_out {
                export_orbit(&rec, path)?;
            }
            if output.json {
                let counts = rec.atoms.0.iter().fold(vec![0usize; pwi.d()], |mut c, &a| {
                    c[a] += 1;
                    c
                });
                let summary = json!({
                    "name": pwi.name(),
                    "seed": [s.re, s.im],
                    "steps": steps,
                    "transient": transient,
                    "stored": rec.points.len(),
                    "escaped_at": rec.escaped_at,
                    "visit_counts": counts,
                    "boundary_hits": rec.boundary_flags.iter().filter(|&&b| b).count(),
                });
                emit(&output, stdout, &pretty(&summary))?;
            } else if orbit_out.is_none() {
                let mut buf = Vec::new();
                write_orbit_csv(&rec, &mut buf)?;
                emit(&output, stdout, &String::from_utf8_lossy(&buf))?;
            }
            if let Some(step) = rec.escaped_at {
                return Err(Error::Escaped { step }.into());
            }
        }
        PwiCommand::Return {
            source,
            seed: s,
            section,
            steps,
            cap,
            output,
        } => {
            let pwi = load_pwi(&source)?;
            let atoms = parse_list::<usize>(&section)?;
            if atoms.iter().any(|&a| a == 0 || a > pwi.d()) {
                return Err(CliError::Usage(format!(
                    "--section atoms must lie in 1..={}",
                    pwi.d()
                )));
            }
            let section: Vec<_> = atoms.iter().map(|&a| pwi.atoms()[a - 1].clone()).collect();
            let mut z = seed(s.re, s.im);
            let mut returns = Vec::with_capacity(steps);
            for _ in 0..steps {
                let (k, w) = pwi.first_return(&section, z, cap)?;
                let atom = pwi.locate(w).map(|a| a + 1);
                returns.push((k, w, atom));
                z = w;
            }
            let text = if output.json {
                let rows: Vec<Value> = returns
                    .iter()
                    .map(|(k, w, a)| json!({ "k": k, "point": pair(*w), "atom": a }))
                    .collect();
                pretty(&json!({ "returns": rows }))
            } else {
                returns
                    .iter()
                    .map(|(k, w, _)| format!("{k} {} {}\n", w.re, w.im))
                    .collect()
            };
            emit(&output, stdout, &text)?;
        }
    }
    Ok(0)
}

fn graph(a: GraphArgs, stdout: &mut dyn Write) -> Res<i32> {
    let perm = parse_permutation(&a.perm)?;
    let d = perm.d();
    let g = ConnectingGraph::build(&perm)?;
    let theta = match &a.theta {
        Some(t) => parse_list::<f64>(t)?,
        None => vec![0.0; d],
    };
    let coeffs = parametric_coefficients(&theta, &perm, a.p0)?;
    let report = json!({
        "cycles": g.cycles(),
        "connected": g.is_connected(),
        "theta_sum": coeffs.theta_sum,
        "coefficients": coeffs.r.iter().map(|&r| pair(r)).collect::<Vec<_>>(),
    });
    emit(&a.output, stdout, &pretty(&report))?;
    Ok(0)
}

#[derive(serde::Serialize)]
struct EmbedReport {
    match_length: usize,
    escaped: bool,
    level: usize,
    horizon: usize,
    xi: Vec<Complex64>,
    residual: f64,
    resonant: bool,
}

fn embed_check(
    pwi: &Pwi,
    f: &Iet,
    h0: Complex64,
    steps: usize,
    level: usize,
    cap: usize,
    alignment: Option<&str>,
) -> Res<EmbedReport> {
    let d = f.d();
    if pwi.d() != d {
        return Err(Error::LengthMismatch {
            expected: d,
            actual: pwi.d(),
        }
        .into());
    }
    let alignment: Vec<usize> = match alignment {
        Some(text) => {
            let one_based = parse_list::<usize>(text)?;
            let p = parse_permutation(text)
                .map_err(|_| CliError::Usage(format!("--alignment {text} is not a permutation")))?;
            if p.d() != d {
                return Err(CliError::Usage(format!("--alignment needs {d} entries")));
            }
            one_based.iter().map(|&j| j - 1).collect()
        }
        None => (0..d).collect(),
    };

    let (match_length, escaped) = match symbolic_match(f, pwi, h0, steps, &alignment) {
        Ok(n) => (n, false),
        Err(Error::Escaped { step }) => (step, true),
        Err(e) => return Err(e.into()),
    };

    // angles and translations indexed by interval
    let mut theta = vec![0.0; d];
    let mut lambda = vec![Complex64::new(0.0, 0.0); d];
    for (atom, &j) in alignment.iter().enumerate() {
        theta[j] = pwi.maps()[atom].theta();
        lambda[j] = pwi.maps()[atom].lambda();
    }
    let est = xi_estimates(f, &theta, level, cap)?;
    let residual = ergodic_residual(f, &theta, &lambda, h0, &est.xi);
    Ok(EmbedReport {
        match_length,
        escaped,
        level,
        horizon: est.horizon,
        xi: est.xi,
        residual,
        resonant: resonance_check(f, &theta),
    })
}

fn reproduce(a: ReproduceArgs, stdout: &mut dyn Write) -> Res<i32> {
    let cases: Vec<Case> = if a.case == "all" {
        Case::ALL.to_vec()
    } else {
        vec![parse_case(&a.case)?]
    };
    if a.orbit_out.is_some() && cases.len() > 1 {
        return Err(CliError::Usage("--orbit-out needs a single case".into()));
    }
    let reports = cases
        .par_iter()
        .map(|&c| pwilab::experiments::reproduce(c))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(path) = &a.orbit_out {
        export_orbit(&case_orbit(cases[0], a.steps, a.transient), path)?;
    }
    let text = if a.output.json {
        if reports.len() == 1 {
            pretty(&reports[0])
        } else {
            pretty(&reports)
        }
    } else {
        reports.iter().map(summary).collect()
    };
    emit(&a.output, stdout, &text)?;
    Ok(if reports.iter().all(|r| r.pass) { 0 } else { 1 })
}

fn summary(r: &Report) -> String {
    let mut s = format!(
        "{}: seed {:+.6}{:+.6}i, match {}{}\n",
        r.case,
        r.seed.re,
        r.seed.im,
        r.match_length,
        if r.escaped { " (escaped)" } else { "" }
    );
    for c in &r.checks {
        let op = if c.relation == "ge" { ">=" } else { "<=" };
        s.push_str(&format!(
            "  {:<24} {:>12.4e} {op} {:<10.3e} {}\n",
            c.name,
            c.value,
            c.threshold,
            if c.pass { "ok" } else { "FAIL" }
        ));
    }
    s.push_str(&format!(
        "  overall: {}\n",
        if r.pass { "pass" } else { "FAIL" }
    ));
    s
}

fn plot(a: PlotArgs, stdout: &mut dyn Write) -> Res<i32> {
    let loaded = a
        .inputs
        .par_iter()
        .map(|p| import_orbit(p))
        .collect::<Result<Vec<_>, _>>()?;

    let svg_text = match a.style {
        Style::Scatter => {
            let (atoms, generated) = match (&a.source.config, &a.source.case) {
                (None, None) => (Vec::new(), None),
                _ => {
                    let pwi = load_pwi(&a.source)?;
                    let orbit = if loaded.is_empty() {
                        Some(scatter_orbit(&a, &pwi)?)
                    } else {
                        None
                    };
                    (pwi.atoms().to_vec(), orbit)
                }
            };
            let mut series: Vec<Vec<Complex64>> = loaded.into_iter().map(|r| r.points).collect();
            series.extend(generated);
            svg::scatter(&series, &atoms, a.radius)?
        }
        Style::Cylinder => {
            let mut series: Vec<Vec<(f64, f64)>> = loaded
                .into_iter()
                .map(|r| r.points.iter().map(|z| (z.re, z.im)).collect())
                .collect();
            let length = match (&a.lengths, &a.perm) {
                (Some(lengths), Some(perm)) => {
                    let f = build_iet(&IetSpec {
                        lengths: lengths.clone(),
                        perm: perm.clone(),
                    })?;
                    let theta = match &a.theta {
                        Some(t) => parse_list::<f64>(t)?,
                        None => resonant_angles(&f),
                    };
                    let orbit = tangent_orbit(
                        &f,
                        &theta,
                        TangentState::new(a.seed.re, a.seed.im),
                        a.steps,
                    )?;
                    series.push(orbit.iter().skip(a.transient).map(|s| (s.x, s.y)).collect());
                    f.total_length()
                }
                _ if !series.is_empty() => series.iter().flatten().map(|p| p.0).fold(0.0, f64::max),
                _ => {
                    return Err(CliError::Usage(
                        "cylinder plots need --lengths/--perm or --input".into(),
                    ))
                }
            };
            svg::cylinder(&series, length, a.radius)?
        }
    };
    write_file(&a.out, &svg_text)?;
    writeln!(stdout, "{}", a.out.display())?;
    Ok(0)
}

fn scatter_orbit(a: &PlotArgs, pwi: &Pwi) -> Res<Vec<Complex64>> {
    let z0 = seed(a.seed.re, a.seed.im);
    if let (Some(name), true) = (&a.source.case, z0 == Complex64::new(0.0, 0.0)) {
        return Ok(case_orbit(parse_case(name)?, a.steps, a.transient).points);
    }
    Ok(pwi.orbit(z0, a.steps, a.transient).points)
}

fn write_file(path: &Path, text: &str) -> Res<()> {
    fs::write(path, text)?;
    Ok(())
}
