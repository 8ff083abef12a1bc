//! Plain-text and CSV renderings of unit-root and cointegration results.
//!
//! Numbers are printed with fixed decimals so reports are byte-stable for a
//! given input. Coefficient stars test the coefficient against zero with a
//! two-sided normal p-value; Wald rows print the signed t and `|t|`.

use std::fmt::Write as _;
use std::io::Write;

use crate::coint::{wald_test, CointEstimate, CointError, CointTuning, Eq15Fit, Eq15Result, Eq20Fit, Eq20Result, LcResult, WaldResult};
use crate::model::Substitutability;
use crate::significance::Significance;
use crate::unitroot::{Tuning, UnitRootResult};

const COL: usize = 18;

/// Fixed-point with `d` decimals; never prints a negative zero.
pub fn fixed(v: f64, d: usize) -> String {
    let s = format!("{v:.d$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

#[derive(Debug, Clone)]
pub struct UnitRootRow {
    pub country: String,
    pub variable: String,
    pub adf: UnitRootResult,
    pub pp: UnitRootResult,
}

/// One CSV line of a report.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub country: String,
    pub equation: String,
    pub method: String,
    pub row: String,
    pub estimate: Option<f64>,
    pub std_error: Option<f64>,
    pub stars: &'static str,
    pub note: String,
}

pub fn write_rows_csv<W: Write>(rows: &[ReportRow], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["country", "equation", "method", "row", "estimate", "std_error", "stars", "note"])?;
    let opt = |v: Option<f64>| v.map(|x| fixed(x, 6)).unwrap_or_default();
    for r in rows {
        w.write_record([
            r.country.as_str(),
            &r.equation,
            &r.method,
            &r.row,
            &opt(r.estimate),
            &opt(r.std_error),
            r.stars,
            &r.note,
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn unitroot_table(rows: &[UnitRootRow]) -> String {
    let mut s = String::new();
    s.push_str("Unit root tests (constant, no trend). H0: unit root.\n");
    s.push_str("***, **, * : rejection at 1%, 5%, 10%.\n\n");
    let _ = writeln!(s, "{:<10}{:<20}{:>12}{:>6}{:>12}{:>8}{:>6}", "country", "variable", "ADF", "lags", "PP", "bw", "T");
    for r in rows {
        let lags = match r.adf.tuning {
            Tuning::Lags(p) => p.to_string(),
            Tuning::Bandwidth(b) => fixed(b, 2),
        };
        let bw = match r.pp.tuning {
            Tuning::Bandwidth(b) => fixed(b, 2),
            Tuning::Lags(p) => p.to_string(),
        };
        let _ = writeln!(
            s,
            "{:<10}{:<20}{:>12}{:>6}{:>12}{:>8}{:>6}",
            r.country,
            r.variable,
            starred(r.adf.statistic, r.adf.significance, 3),
            lags,
            starred(r.pp.statistic, r.pp.significance, 3),
            bw,
            r.adf.nobs
        );
    }
    s
}

pub fn unitroot_rows(rows: &[UnitRootRow]) -> Vec<ReportRow> {
    let mut out = Vec::new();
    for r in rows {
        for (name, res) in [("ADF", &r.adf), ("PP", &r.pp)] {
            let note = match res.tuning {
                Tuning::Lags(p) => format!("lags={p}"),
                Tuning::Bandwidth(b) => format!("bandwidth={}", fixed(b, 4)),
            };
            out.push(ReportRow {
                country: r.country.clone(),
                equation: "unitroot".into(),
                method: name.into(),
                row: r.variable.clone(),
                estimate: Some(res.statistic),
                std_error: None,
                stars: res.significance.stars(),
                note,
            });
        }
    }
    out
}

fn starred(v: f64, sig: Significance, d: usize) -> String {
    format!("{}{:<3}", fixed(v, d), sig.stars())
}

fn coef_cell(est: &CointEstimate, i: usize) -> (String, String) {
    let sig = coef_significance(est, i);
    (starred(est.coefficients[i], sig, 4), format!("({})   ", fixed(est.std_errors[i], 4)))
}

fn coef_significance(est: &CointEstimate, i: usize) -> Significance {
    wald_test(est.coefficients[i], est.std_errors[i], 0.0, i).significance()
}

fn tuning_cell(est: &CointEstimate) -> String {
    match est.tuning {
        CointTuning::LeadsLags(k) => format!("k={k}"),
        CointTuning::Bandwidth(b) => format!("bw={}", fixed(b, 2)),
    }
}

fn lc_cell(lc: &Result<LcResult, CointError>) -> String {
    match lc {
        Ok(l) => format!("{} ({})", fixed(l.statistic, 4), l.p_band),
        Err(_) => "n/a".into(),
    }
}

fn wald_cell(w: &WaldResult) -> String {
    format!("{} [{}]{}", fixed(w.t_statistic, 2), fixed(w.abs_t(), 2), w.significance().stars())
}

fn line(s: &mut String, label: &str, a: &str, b: &str) {
    let _ = writeln!(s, "{label:<22}{a:>COL$}{b:>COL$}");
}

fn header(s: &mut String, title: &str, country: &str, start: impl std::fmt::Display, end: impl std::fmt::Display, nobs: (usize, usize)) {
    let _ = writeln!(s, "{title}");
    let _ = writeln!(s, "country: {country}   sample: {start} to {end}   T(DOLS) = {}   T(FMOLS) = {}", nobs.0, nobs.1);
    line(s, "", "DOLS", "FMOLS");
}

pub fn eq15_table(country: &str, r: &Eq15Result) -> String {
    let mut s = String::new();
    header(
        &mut s,
        "Relative demand: ln(M/SM*) = kappa0 - kappa1 (ln oc - ln oc*)",
        country,
        r.start,
        r.end,
        (r.dols.estimate.nobs, r.fmols.estimate.nobs),
    );
    let (d, f) = (&r.dols, &r.fmols);
    for (i, name) in ["kappa0", "kappa1"].iter().enumerate() {
        let (dc, ds) = coef_cell(&d.estimate, i);
        let (fc, fs) = coef_cell(&f.estimate, i);
        line(&mut s, name, &dc, &fc);
        line(&mut s, "", &ds, &fs);
    }
    line(&mut s, "R2", &fixed(d.estimate.r_squared, 4), &fixed(f.estimate.r_squared, 4));
    line(&mut s, "leads/lags, bandwidth", &tuning_cell(&d.estimate), &tuning_cell(&f.estimate));
    line(&mut s, "L_c (p)", &lc_cell(&d.lc), &lc_cell(&f.lc));
    line(&mut s, "Wald kappa1=1 t [|t|]", &wald_cell(&d.wald_kappa1), &wald_cell(&f.wald_kappa1));
    let structural = |fit: &Eq15Fit, k: usize| match &fit.structural {
        Ok(p) => fixed(if k == 0 { p.0 } else { p.1 }, 4),
        Err(_) => "n/a".into(),
    };
    line(&mut s, "sigma", &structural(d, 0), &structural(f, 0));
    line(&mut s, "delta", &structural(d, 1), &structural(f, 1));
    let relation = |fit: &Eq15Fit| match &fit.structural {
        Ok((sigma, _)) => Substitutability::from_elasticity(*sigma).to_string(),
        Err(_) => "not invertible".into(),
    };
    line(&mut s, "currencies", &relation(d), &relation(f));
    for (name, fit) in [("DOLS", d), ("FMOLS", f)] {
        if let Err(e) = &fit.structural {
            let _ = writeln!(s, "note ({name}): {e}");
        }
    }
    s
}

pub fn eq15_rows(country: &str, r: &Eq15Result) -> Vec<ReportRow> {
    let mut out = Vec::new();
    for fit in [&r.dols, &r.fmols] {
        let mut rows = coint_rows(country, "eq15", &fit.estimate, &["kappa0", "kappa1"], &fit.lc);
        rows.push(wald_row(country, "eq15", &fit.estimate, "wald_kappa1_eq_1", &fit.wald_kappa1));
        match &fit.structural {
            Ok((sigma, delta)) => {
                let relation = Substitutability::from_elasticity(*sigma).to_string();
                rows.push(plain(country, "eq15", &fit.estimate, "sigma", Some(*sigma), relation));
                rows.push(plain(country, "eq15", &fit.estimate, "delta", Some(*delta), String::new()));
            }
            Err(e) => rows.push(plain(country, "eq15", &fit.estimate, "structural", None, e.to_string())),
        }
        out.extend(rows);
    }
    out
}

/// `label` names the scale/aggregate variant, e.g. `M2, consumption`.
pub fn eq20_table(country: &str, label: &str, r: &Eq20Result) -> String {
    let mut s = String::new();
    header(
        &mut s,
        &format!("Money demand ({label}): ln(M/P) = omega0 - omega1 ln oc + omega2 (ln oc - ln oc*) + omega3 ln(X/P)"),
        country,
        r.start,
        r.end,
        (r.dols.estimate.nobs, r.fmols.estimate.nobs),
    );
    let (d, f) = (&r.dols, &r.fmols);
    for (i, name) in ["omega0", "omega1", "omega2", "omega3"].iter().enumerate() {
        let (dc, ds) = coef_cell(&d.estimate, i);
        let (fc, fs) = coef_cell(&f.estimate, i);
        line(&mut s, name, &dc, &fc);
        line(&mut s, "", &ds, &fs);
    }
    line(&mut s, "R2", &fixed(d.estimate.r_squared, 4), &fixed(f.estimate.r_squared, 4));
    line(&mut s, "leads/lags, bandwidth", &tuning_cell(&d.estimate), &tuning_cell(&f.estimate));
    line(&mut s, "L_c (p)", &lc_cell(&d.lc), &lc_cell(&f.lc));
    line(&mut s, "Wald omega1=1 t [|t|]", &wald_cell(&d.wald_omega1), &wald_cell(&f.wald_omega1));
    line(&mut s, "Wald omega3=1 t [|t|]", &wald_cell(&d.wald_omega3), &wald_cell(&f.wald_omega3));
    s
}

pub fn eq20_rows(country: &str, label: &str, r: &Eq20Result) -> Vec<ReportRow> {
    let equation = format!("eq20[{label}]");
    let mut out = Vec::new();
    for fit in [&r.dols, &r.fmols] {
        let fit: &Eq20Fit = fit;
        out.extend(coint_rows(country, &equation, &fit.estimate, &["omega0", "omega1", "omega2", "omega3"], &fit.lc));
        out.push(wald_row(country, &equation, &fit.estimate, "wald_omega1_eq_1", &fit.wald_omega1));
        out.push(wald_row(country, &equation, &fit.estimate, "wald_omega3_eq_1", &fit.wald_omega3));
    }
    out
}

fn coint_rows(country: &str, equation: &str, est: &CointEstimate, names: &[&str], lc: &Result<LcResult, CointError>) -> Vec<ReportRow> {
    let mut rows: Vec<ReportRow> = names
        .iter()
        .enumerate()
        .map(|(i, n)| ReportRow {
            country: country.into(),
            equation: equation.into(),
            method: est.method.to_string(),
            row: n.to_string(),
            estimate: Some(est.coefficients[i]),
            std_error: Some(est.std_errors[i]),
            stars: coef_significance(est, i).stars(),
            note: String::new(),
        })
        .collect();
    rows.push(plain(country, equation, est, "r_squared", Some(est.r_squared), String::new()));
    rows.push(plain(country, equation, est, "tuning", None, tuning_cell(est)));
    rows.push(match lc {
        Ok(l) => plain(country, equation, est, "lc", Some(l.statistic), format!("p={}", l.p_band)),
        Err(e) => plain(country, equation, est, "lc", None, e.to_string()),
    });
    rows
}

fn wald_row(country: &str, equation: &str, est: &CointEstimate, row: &str, w: &WaldResult) -> ReportRow {
    ReportRow {
        country: country.into(),
        equation: equation.into(),
        method: est.method.to_string(),
        row: row.into(),
        estimate: Some(w.t_statistic),
        std_error: None,
        stars: w.significance().stars(),
        note: format!("abs_t={} p={}", fixed(w.abs_t(), 4), fixed(w.p_value, 4)),
    }
}

fn plain(country: &str, equation: &str, est: &CointEstimate, row: &str, estimate: Option<f64>, note: String) -> ReportRow {
    ReportRow {
        country: country.into(),
        equation: equation.into(),
        method: est.method.to_string(),
        row: row.into(),
        estimate,
        std_error: None,
        stars: "",
        note,
    }
}
