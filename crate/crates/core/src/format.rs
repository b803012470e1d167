//! Symbol documents and report formatting.
//!
//! A scalar symbol is one of
//!
//! ```text
//! {"type": "laurent", "coeffs": [[k, re, im], ...]}
//! {"type": "rational", "num": {...}, "den": {...}}
//! {"laurent": [[k, re, im], ...]}
//! ```
//!
//! with `re`, `im` given as floats or decimal strings. A matrix symbol is
//! `{"entries": [[f, phi], [g, psi]]}`.

use std::io::Write;

use num_complex::Complex64 as c64;
use serde::{Deserialize, Deserializer};
use serde_json::ser::{CompactFormatter, Formatter};
use serde_json::{json, Value};

use crate::error::{GsioError, Result};
use crate::symbol::{LaurentSymbol, MatrixSymbol, RationalSymbol, SymbolRole};

/// Float or decimal string.
#[derive(Clone, Copy, Debug)]
struct Real(f64);

impl<'de> Deserialize<'de> for Real {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d).map_err(|_| serde::de::Error::custom("expected a number or decimal string"))? {
            Raw::Num(x) => Ok(Real(x)),
            Raw::Text(s) => s
                .trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .map(Real)
                .ok_or_else(|| serde::de::Error::custom(format!("invalid decimal {s:?}"))),
        }
    }
}

#[derive(Deserialize)]
struct Term(i64, Real, Real);

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSymbol {
    #[serde(rename = "type")]
    kind: Option<String>,
    coeffs: Option<Vec<Term>>,
    laurent: Option<Vec<Term>>,
    num: Option<Box<SymbolDoc>>,
    den: Option<Box<SymbolDoc>>,
}

/// Structurally validated symbol document.
#[derive(Clone, Debug, Deserialize)]
#[serde(try_from = "RawSymbol")]
pub enum SymbolDoc {
    Laurent(Vec<(i64, c64)>),
    Rational { num: Vec<(i64, c64)>, den: Vec<(i64, c64)> },
}

fn terms(t: Vec<Term>) -> Vec<(i64, c64)> {
    t.into_iter().map(|Term(k, re, im)| (k, c64::new(re.0, im.0))).collect()
}

impl TryFrom<RawSymbol> for SymbolDoc {
    type Error = String;

    fn try_from(r: RawSymbol) -> std::result::Result<Self, String> {
        let laurent_part = |d: Option<Box<SymbolDoc>>, name: &str| match d.map(|b| *b) {
            Some(SymbolDoc::Laurent(t)) => Ok(t),
            Some(SymbolDoc::Rational { .. }) => Err(format!("\"{name}\" must be a Laurent symbol")),
            None => Err(format!("rational symbol needs \"{name}\"")),
        };
        match (r.kind.as_deref(), r.coeffs, r.laurent) {
            (Some("rational"), None, None) => {
                Ok(SymbolDoc::Rational { num: laurent_part(r.num, "num")?, den: laurent_part(r.den, "den")? })
            }
            (Some("rational"), _, _) => Err("rational symbol takes \"num\" and \"den\", not coefficients".into()),
            (_, _, _) if r.num.is_some() || r.den.is_some() => Err("\"num\"/\"den\" need \"type\": \"rational\"".into()),
            (Some("laurent") | None, Some(c), None) | (Some("laurent") | None, None, Some(c)) => Ok(SymbolDoc::Laurent(terms(c))),
            (Some("laurent") | None, Some(_), Some(_)) => Err("give either \"coeffs\" or \"laurent\", not both".into()),
            (Some("laurent") | None, None, None) => Err("Laurent symbol needs \"coeffs\"".into()),
            (Some(other), _, _) => Err(format!("unknown symbol type {other:?}")),
        }
    }
}

impl SymbolDoc {
    /// Builds the symbol; denominators are certified here.
    pub fn to_symbol(&self) -> Result<RationalSymbol> {
        match self {
            SymbolDoc::Laurent(t) => Ok(RationalSymbol::from_laurent(LaurentSymbol::from_pairs(t.iter().copied()))),
            SymbolDoc::Rational { num, den } => RationalSymbol::new(
                LaurentSymbol::from_pairs(num.iter().copied()),
                LaurentSymbol::from_pairs(den.iter().copied()),
            ),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixDoc {
    entries: [[SymbolDoc; 2]; 2],
}

fn parse_error(e: serde_json::Error) -> GsioError {
    let msg = e.to_string();
    let message = msg.split(" at line ").next().unwrap_or(&msg).to_string();
    GsioError::Parse { line: e.line(), column: e.column(), message }
}

pub fn parse_symbol(text: &str) -> Result<RationalSymbol> {
    serde_json::from_str::<SymbolDoc>(text).map_err(parse_error)?.to_symbol()
}

/// Parses a matrix document as a GSIO symbol `[[f, phi], [g, psi]]`.
pub fn parse_matrix_symbol(text: &str) -> Result<MatrixSymbol> {
    let doc: MatrixDoc = serde_json::from_str(text).map_err(parse_error)?;
    let [[a, b], [c, d]] = &doc.entries;
    Ok(MatrixSymbol::new(
        [[a.to_symbol()?, b.to_symbol()?], [c.to_symbol()?, d.to_symbol()?]],
        SymbolRole::GsioH,
    ))
}

pub fn laurent_json(s: &LaurentSymbol) -> Value {
    let c: Vec<Value> = s.terms().map(|(k, v)| json!([k, v.re, v.im])).collect();
    json!({"type": "laurent", "coeffs": c})
}

pub fn symbol_json(s: &RationalSymbol) -> Value {
    match s.as_laurent() {
        Some(l) => laurent_json(l),
        None => json!({"type": "rational", "num": laurent_json(s.numerator()), "den": laurent_json(s.denominator())}),
    }
}

pub fn matrix_json(m: &MatrixSymbol) -> Value {
    let e = |i, j| symbol_json(m.entry(i, j));
    json!({"entries": [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]})
}

/// C `%.17g`.
pub fn g17(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{x:.16e}");
    let (mant, exp) = sci.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    let strip = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if !(-4..17).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", strip(mant), exp.abs())
    } else {
        strip(&format!("{x:.*}", (16 - exp) as usize))
    }
}

/// JSON formatter writing floats as `%.17g`.
struct G17Formatter(CompactFormatter);

impl Formatter for G17Formatter {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> std::io::Result<()> {
        let s = g17(value);
        if value.is_finite() {
            w.write_all(s.as_bytes())
        } else {
            w.write_all(b"null")
        }
    }
}

/// Compact JSON with `%.17g` floats and a trailing newline.
pub fn to_json_string(v: &Value) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, G17Formatter(CompactFormatter));
    serde::Serialize::serialize(v, &mut ser).expect("in-memory JSON");
    out.push(b'\n');
    String::from_utf8(out).expect("JSON is UTF-8")
}

/// CSV with a header row; floats as `%.17g`.
pub fn csv<'a>(header: &[&str], rows: impl IntoIterator<Item = Vec<CsvCell<'a>>>) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for r in rows {
        let cells: Vec<String> = r.into_iter().map(|c| c.render()).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

pub enum CsvCell<'a> {
    F(f64),
    I(i64),
    S(&'a str),
}

impl CsvCell<'_> {
    fn render(&self) -> String {
        match self {
            CsvCell::F(x) => g17(*x),
            CsvCell::I(k) => k.to_string(),
            CsvCell::S(s) => s.to_string(),
        }
    }
}

/// Little-endian `(re, im)` float64 pairs, row-major.
pub fn dense_bin(rows: usize, cols: usize, entry: impl Fn(usize, usize) -> c64) -> Vec<u8> {
    let mut out = Vec::with_capacity(rows * cols * 16);
    for i in 0..rows {
        for j in 0..cols {
            let v = entry(i, j);
            out.extend_from_slice(&v.re.to_le_bytes());
            out.extend_from_slice(&v.im.to_le_bytes());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_form_laurent() {
        let m = parse_matrix_symbol(
            r#"{"entries": [[{"laurent": [[1, 1, 0]]}, {"laurent": []}],
                            [{"type": "laurent", "coeffs": []}, {"laurent": [[0, "1.0", "0"]]}]]}"#,
        )
        .unwrap();
        assert_eq!(m.f().as_laurent().unwrap(), &LaurentSymbol::z_pow(1));
        assert_eq!(m.psi().as_laurent().unwrap(), &LaurentSymbol::one());
        assert!(m.phi().is_zero());
    }

    #[test]
    fn bad_mode_reports_position() {
        let err = parse_symbol("{\"type\": \"laurent\",\n \"coeffs\": [[\"a\", 1, 0]]}").unwrap_err();
        match err {
            GsioError::Parse { line, column, .. } => assert_eq!((line, column), (2, 16)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn denominator_on_circle() {
        let text = r#"{"type": "rational", "num": {"coeffs": [[0, 1, 0]]}, "den": {"coeffs": [[1, 1, 0], [0, -1, 0]]}}"#;
        assert!(matches!(parse_symbol(text), Err(GsioError::NotInvertibleOnCircle { .. })));
    }

    #[test]
    fn structural_errors() {
        assert!(matches!(parse_symbol(r#"{"type": "spline", "coeffs": []}"#), Err(GsioError::Parse { .. })));
        assert!(matches!(parse_symbol(r#"{"coeffs": [[0, "x", 0]]}"#), Err(GsioError::Parse { .. })));
        assert!(matches!(parse_symbol(r#"{"type": "rational", "num": {"coeffs": []}}"#), Err(GsioError::Parse { .. })));
    }

    #[test]
    fn round_trip() {
        let s = RationalSymbol::new(
            LaurentSymbol::from_pairs([(0, c64::new(1.0, 0.5))]),
            LaurentSymbol::from_pairs([(0, c64::new(1.0, 0.0)), (1, c64::new(0.25, 0.0))]),
        )
        .unwrap();
        let back = parse_symbol(&to_json_string(&symbol_json(&s))).unwrap();
        assert!(back.approx_eq(&s, 1e-15));
    }

    #[test]
    fn g17_matches_c() {
        assert_eq!(g17(0.1), "0.10000000000000001");
        assert_eq!(g17(1.0), "1");
        assert_eq!(g17(-2.5), "-2.5");
        assert_eq!(g17(1e-5), "1.0000000000000001e-05");
        assert_eq!(g17(1e20), "1e+20");
        assert_eq!(g17(123456.0), "123456");
        assert_eq!(g17(1.0 / 3.0), "0.33333333333333331");
        assert_eq!(g17(0.0), "0");
        for x in [0.1, 1.0 / 3.0, 2.0f64.sqrt(), -7.25e-300, 6.02e23] {
            assert_eq!(g17(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn bin_layout() {
        let b = dense_bin(1, 2, |_, j| c64::new(j as f64, -1.0));
        assert_eq!(b.len(), 32);
        assert_eq!(f64::from_le_bytes(b[16..24].try_into().unwrap()), 1.0);
        assert_eq!(f64::from_le_bytes(b[24..32].try_into().unwrap()), -1.0);
    }
}
