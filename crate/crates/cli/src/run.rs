use std::io::Write;

use gsio_core::battery::run_all;
use gsio_core::format::{csv, dense_bin, g17, matrix_json, parse_matrix_symbol, parse_symbol, symbol_json, to_json_string, CsvCell};
use gsio_core::section::{gsio_section, FiniteSection};
use gsio_core::spectral::{
    berezin_pair, classify, dense_spectrum, fredholm_index, inclusion_region, kernel_order, symbol_map_rho, Lattice,
    SymbolPair,
};
use gsio_core::symbol::{MatrixSymbol, SymbolRole};
use gsio_core::wiener_hopf::{fredholm_verdict, wh_matrix2, wh_scalar, Factors, WHFactorization};
use gsio_core::{c64, fft, GsioError, Result};
use serde_json::{json, Value};

use crate::{Command, Format, RunConfig};

fn read(cfg: &RunConfig) -> Result<String> {
    let path = cfg.symbol_path.as_ref().ok_or_else(|| GsioError::InvalidArgument("--symbol is required".into()))?;
    std::fs::read_to_string(path).map_err(|e| GsioError::Io(format!("{}: {e}", path.display())))
}

pub fn load_symbol_file(cfg: &RunConfig) -> Result<MatrixSymbol> {
    parse_matrix_symbol(&read(cfg)?)
}

enum Artifact {
    Text(String),
    Bytes(Vec<u8>),
}

fn emit(cfg: &RunConfig, artifact: Artifact) -> Result<()> {
    let bytes = match artifact {
        Artifact::Text(s) => s.into_bytes(),
        Artifact::Bytes(b) => b,
    };
    match &cfg.out_path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| GsioError::Io(format!("{}: {e}", p.display()))),
        None => std::io::stdout().write_all(&bytes).map_err(|e| GsioError::Io(e.to_string())),
    }
}

/// Writes the artifact only when `--out` is given.
fn emit_if_out(cfg: &RunConfig, artifact: impl FnOnce() -> Artifact) -> Result<()> {
    if cfg.out_path.is_some() {
        emit(cfg, artifact())?;
    }
    Ok(())
}

fn points_artifact(format: Format, pts: &[c64], key: &str) -> Artifact {
    match format {
        Format::Csv => Artifact::Text(csv(&["re", "im"], pts.iter().map(|z| vec![CsvCell::F(z.re), CsvCell::F(z.im)]))),
        Format::Json => Artifact::Text(to_json_string(&json!({ key: pts.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>() }))),
        Format::Bin => Artifact::Bytes(dense_bin(pts.len(), 1, |i, _| pts[i])),
    }
}

fn section_artifact(format: Format, s: &FiniteSection) -> Artifact {
    match format {
        Format::Csv => Artifact::Text(csv(
            &["row_mode", "col_mode", "re", "im"],
            s.data().triplets().map(|(i, j, v)| {
                vec![CsvCell::I(s.rows()[i].mode), CsvCell::I(s.cols()[j].mode), CsvCell::F(v.re), CsvCell::F(v.im)]
            }),
        )),
        Format::Json => Artifact::Text(to_json_string(&json!({
            "order": s.order(),
            "row_modes": s.rows().iter().map(|l| l.mode).collect::<Vec<_>>(),
            "col_modes": s.cols().iter().map(|l| l.mode).collect::<Vec<_>>(),
            "entries": s.data().triplets().map(|(i, j, v)| json!([i, j, v.re, v.im])).collect::<Vec<_>>(),
        }))),
        Format::Bin => {
            let (r, c) = s.shape();
            Artifact::Bytes(dense_bin(r, c, |i, j| s.get(i, j)))
        }
    }
}

fn pair_artifact(format: Format, rows: &[(Option<f64>, c64, c64, c64)]) -> Artifact {
    let theta = |xi: &c64| xi.arg().rem_euclid(std::f64::consts::TAU);
    let with_r = rows.iter().any(|r| r.0.is_some());
    match format {
        Format::Csv => {
            let mut header = vec!["theta", "f_re", "f_im", "psi_re", "psi_im"];
            if with_r {
                header.insert(0, "r");
            }
            Artifact::Text(csv(
                &header,
                rows.iter().map(|(r, xi, f, p)| {
                    let mut cells = vec![CsvCell::F(theta(xi)), CsvCell::F(f.re), CsvCell::F(f.im), CsvCell::F(p.re), CsvCell::F(p.im)];
                    if let Some(r) = r {
                        cells.insert(0, CsvCell::F(*r));
                    }
                    cells
                }),
            ))
        }
        Format::Json => Artifact::Text(to_json_string(&json!({
            "points": rows.iter().map(|(r, xi, f, p)| json!({
                "r": r, "theta": theta(xi), "f": [f.re, f.im], "psi": [p.re, p.im]
            })).collect::<Vec<_>>()
        }))),
        Format::Bin => Artifact::Bytes(dense_bin(rows.len(), 2, |i, j| if j == 0 { rows[i].2 } else { rows[i].3 })),
    }
}

fn factorization_json(w: &WHFactorization) -> Value {
    let (minus, plus) = match &w.factors {
        Factors::Scalar { minus, plus } => (symbol_json(minus), symbol_json(plus)),
        Factors::Matrix { minus, plus } => (matrix_json(minus), matrix_json(plus)),
    };
    json!({
        "kappa": w.kappa,
        "reconstruction_residual": w.reconstruction_residual,
        "normalized": w.normalized,
        "bandwidth": w.bandwidth,
        "minus": minus,
        "plus": plus,
    })
}

fn factorization_csv(w: &WHFactorization) -> String {
    let mut rows: Vec<(&str, usize, usize, i64, c64)> = Vec::new();
    let mut push = |name, i, j, s: &gsio_core::symbol::RationalSymbol| match s.as_laurent() {
        Some(l) => rows.extend(l.terms().map(|(k, v)| (name, i, j, k, v))),
        None => rows.extend(
            s.numerator().terms().map(|(k, v)| (if name == "minus" { "minus_num" } else { "plus_num" }, i, j, k, v))
                .chain(s.denominator().terms().map(|(k, v)| (if name == "minus" { "minus_den" } else { "plus_den" }, i, j, k, v))),
        ),
    };
    match &w.factors {
        Factors::Scalar { minus, plus } => {
            push("minus", 0, 0, minus);
            push("plus", 0, 0, plus);
        }
        Factors::Matrix { minus, plus } => {
            for i in 0..2 {
                for j in 0..2 {
                    push("minus", i, j, minus.entry(i, j));
                }
            }
            for i in 0..2 {
                for j in 0..2 {
                    push("plus", i, j, plus.entry(i, j));
                }
            }
        }
    }
    csv(
        &["factor", "row", "col", "mode", "re", "im"],
        rows.iter().map(|(n, i, j, k, v)| {
            vec![CsvCell::S(n), CsvCell::I(*i as i64), CsvCell::I(*j as i64), CsvCell::I(*k), CsvCell::F(v.re), CsvCell::F(v.im)]
        }),
    )
}

fn kappa_text(k: &[i64]) -> String {
    k.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn sorted(mut pts: Vec<c64>) -> Vec<c64> {
    pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    pts
}

/// Lattice covering the symbol curves with a margin.
fn region_lattice(h: &MatrixSymbol, n: usize) -> Lattice {
    let pts: Vec<c64> = (0..512)
        .flat_map(|j| {
            let z = fft::grid_point(j, 512);
            [h.f().value_at(z), h.psi().value_at(z)]
        })
        .collect();
    let (lo_re, hi_re) = pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |a, z| (a.0.min(z.re), a.1.max(z.re)));
    let (lo_im, hi_im) = pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |a, z| (a.0.min(z.im), a.1.max(z.im)));
    let pad = 0.25 * (hi_re - lo_re).max(hi_im - lo_im) + 0.5;
    Lattice { re: (lo_re - pad, hi_re + pad), im: (lo_im - pad, hi_im + pad), nre: n, nim: n }
}

/// Runs one command; returns the process exit code on success.
pub fn run_command(cfg: &RunConfig) -> Result<u8> {
    match cfg.command {
        Command::Assemble => {
            let s = gsio_section(&load_symbol_file(cfg)?, cfg.order)?;
            emit(cfg, section_artifact(cfg.format, &s))?;
        }
        Command::Spectrum => {
            let eig = sorted(dense_spectrum(&gsio_section(&load_symbol_file(cfg)?, cfg.order)?)?);
            emit(cfg, points_artifact(cfg.format, &eig, "eigenvalues"))?;
        }
        Command::Berezin => {
            let h = load_symbol_file(cfg)?;
            let mut rows = Vec::new();
            for &r in &cfg.radii {
                let n = kernel_order(r)?;
                for j in 0..cfg.grid {
                    let xi = fft::grid_point(j, cfg.grid);
                    let (a, b) = berezin_pair(&h, r, xi, n)?;
                    rows.push((Some(r), xi, a, b));
                }
            }
            emit(cfg, pair_artifact(cfg.format, &rows))?;
        }
        Command::Rho => {
            let h = load_symbol_file(cfg)?;
            let SymbolPair { f_recovered, psi_recovered, sup_deviation } = symbol_map_rho(&h, cfg.grid, &cfg.radii)?;
            if let Some(d) = sup_deviation {
                eprintln!("sup_deviation={}", g17(d));
            }
            let rows: Vec<_> = f_recovered.iter().zip(&psi_recovered).map(|(a, b)| (None, a.0, a.1, b.1)).collect();
            emit(cfg, pair_artifact(cfg.format, &rows))?;
        }
        Command::Index => {
            let i = fredholm_index(&load_symbol_file(cfg)?)?;
            println!("index={i}");
            emit_if_out(cfg, || Artifact::Text(to_json_string(&json!({ "index": i }))))?;
        }
        Command::Region => {
            let h = load_symbol_file(cfg)?;
            let region = inclusion_region(&h, &region_lattice(&h, cfg.grid), cfg.order)?;
            let members = region.indicator.iter().filter(|&&b| b).count();
            let uncertified = region.uncertified.iter().filter(|&&b| b).count();
            eprintln!("delta={} members={members} uncertified={uncertified}", g17(region.delta));
            let artifact = match cfg.format {
                Format::Csv => Artifact::Text(csv(
                    &["re", "im", "indicator"],
                    region.grid.iter().zip(&region.indicator).map(|(z, &b)| vec![CsvCell::F(z.re), CsvCell::F(z.im), CsvCell::I(b as i64)]),
                )),
                Format::Json => Artifact::Text(to_json_string(&json!({
                    "delta": region.delta,
                    "points": region.grid.iter().enumerate().map(|(i, z)| json!({
                        "re": z.re, "im": z.im, "indicator": region.indicator[i],
                        "d1": region.d1[i], "d2": region.d2[i], "uncertified": region.uncertified[i],
                    })).collect::<Vec<_>>(),
                }))),
                Format::Bin => Artifact::Bytes(dense_bin(region.grid.len(), 1, |i, _| region.grid[i])),
            };
            emit(cfg, artifact)?;
        }
        Command::Factorize => {
            let text = read(cfg)?;
            let is_matrix = serde_json::from_str::<Value>(&text).ok().is_some_and(|v| v.get("entries").is_some());
            let w = if is_matrix {
                wh_matrix2(&parse_matrix_symbol(&text)?.with_role(SymbolRole::Generic))?
            } else {
                wh_scalar(&parse_symbol(&text)?)?
            };
            println!("kappa={} residual={}", kappa_text(&w.kappa), g17(w.reconstruction_residual));
            let artifact = match cfg.format {
                Format::Csv => Artifact::Text(factorization_csv(&w)),
                _ => Artifact::Text(to_json_string(&factorization_json(&w))),
            };
            emit_if_out(cfg, || artifact)?;
        }
        Command::Verdict => {
            let v = fredholm_verdict(&load_symbol_file(cfg)?)?;
            match (&v.reason, &v.witness) {
                (Some(r), _) => println!("{} reason={r}", v.status.name()),
                (None, w) => println!(
                    "{} index={} dim_ker={} dim_coker={} kappa={}",
                    v.status.name(),
                    v.index.unwrap_or_default(),
                    v.dim_ker,
                    v.dim_coker,
                    w.as_ref().map(|w| kappa_text(&w.kappa)).unwrap_or_default()
                ),
            }
            emit_if_out(cfg, || {
                Artifact::Text(to_json_string(&json!({
                    "status": v.status.name(),
                    "index": v.index,
                    "dim_ker": v.dim_ker,
                    "dim_coker": v.dim_coker,
                    "reason": v.reason,
                    "witness": v.witness.as_ref().map(factorization_json),
                })))
            })?;
        }
        Command::Classify => {
            let c = classify(&load_symbol_file(cfg)?);
            let f = c.flags;
            let fields = [
                ("bounded", f.bounded),
                ("zero", f.zero),
                ("compact", f.compact),
                ("self_adjoint", f.self_adjoint),
                ("positive_necessary", f.positive_necessary),
                ("complex_symmetric", f.complex_symmetric),
            ];
            let rank = c.finite_rank.map_or("none".to_string(), |r| r.to_string());
            println!(
                "{} finite_rank={rank}",
                fields.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
            );
            emit_if_out(cfg, || {
                let mut m: serde_json::Map<String, Value> = fields.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
                m.insert("finite_rank".into(), json!(c.finite_rank));
                Artifact::Text(to_json_string(&Value::Object(m)))
            })?;
        }
        Command::Verify => {
            let results = run_all(cfg.seed);
            for r in &results {
                println!("{}", r.line());
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            println!("{} of {} criteria passed", results.len() - failed, results.len());
            emit_if_out(cfg, || {
                Artifact::Text(csv(
                    &["id", "name", "passed", "seconds", "detail"],
                    results.iter().map(|r| {
                        vec![
                            CsvCell::I(r.id as i64),
                            CsvCell::S(r.name),
                            CsvCell::I(r.passed as i64),
                            CsvCell::F(r.seconds),
                            CsvCell::S(&r.detail),
                        ]
                    }),
                ))
            })?;
            return Ok(if failed == 0 { 0 } else { 1 });
        }
    }
    Ok(0)
}
