use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::field::CanonicalTerms;
use super::{Field, Grid, LaurentPoly, Monomial, PuiseuxSeries, Rational};
use crate::{Error, Result};

/// `"n"` for integers, `"n/d"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"n"`, `"n/d"` or a finite decimal such as `"-0.25"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((i, f)) = s.split_once('.') {
        if f.is_empty() || !f.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = i.starts_with('-');
        let whole: BigInt = match i.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            w => w.parse().map_err(|_| bad())?,
        };
        let frac: BigInt = f.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), f.len());
        let v = Rational::new(whole * &scale + frac, scale);
        return Ok(if neg { -v } else { v });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

fn exponent_suffix(e: &Rational) -> String {
    if One::is_one(e) {
        String::new()
    } else if e.is_integer() {
        format!("^{}", e.numer())
    } else {
        format!("^({})", format_rational(e))
    }
}

/// Root-variable monomial as `Q1^a Q2^b U^c`, empty for the unit monomial.
fn format_root_monomial(e: &[i64; 3]) -> String {
    let mut parts = Vec::new();
    for (name, k) in ["Q1", "Q2", "U"].iter().zip(e) {
        match k {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{k}")),
        }
    }
    parts.join(" ")
}

fn push_signed_term(out: &mut String, c: &Rational, body: &str) {
    let first = out.is_empty();
    let mag = c.abs();
    if c.is_negative() {
        out.push_str(if first { "-" } else { " - " });
    } else if !first {
        out.push_str(" + ");
    }
    if body.is_empty() {
        out.push_str(&format_rational(&mag));
    } else if One::is_one(&mag) {
        out.push_str(body);
    } else {
        let _ = write!(out, "{} {body}", format_rational(&mag));
    }
}

/// Laurent polynomial in the root variables.
pub fn format_poly(p: &LaurentPoly) -> String {
    let mut out = String::new();
    for (e, c) in p.terms() {
        push_signed_term(&mut out, c, &format_root_monomial(e));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Monomial in the physical variables, e.g. `q1^(1/4) q2 u^(-1/2)`.
pub fn format_monomial(m: Monomial, grid: Grid) -> String {
    let mut parts = Vec::new();
    for (name, k) in ["q1", "q2", "u"].iter().zip(m.0) {
        if k != 0 {
            parts.push(format!("{name}{}", exponent_suffix(&grid.from_grid(k))));
        }
    }
    parts.join(" ")
}

/// Readable rendering such as `1 - q1 q2 z`. Coefficients without a
/// finite monomial expansion are printed in parentheses.
pub fn format_series_human<C: Field + CanonicalTerms + std::fmt::Display>(s: &PuiseuxSeries<C>) -> String {
    let grid = s.grid();
    let mut out = String::new();
    for (e, c) in s.iter() {
        let z = if e == 0 { String::new() } else { format!("z{}", exponent_suffix(&grid.from_grid(e))) };
        match c.canonical_terms() {
            Some(terms) if terms.len() == 1 => {
                let (m, r) = &terms[0];
                let body = [format_monomial(*m, grid), z].iter().filter(|p| !p.is_empty()).cloned().collect::<Vec<_>>().join(" ");
                push_signed_term(&mut out, r, &body);
            }
            _ => {
                if !out.is_empty() {
                    out.push_str(" + ");
                }
                let _ = write!(out, "({c})");
                if !z.is_empty() {
                    let _ = write!(out, " {z}");
                }
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Canonical text form: `# grid D`, `# trunc e`, then one line per term
/// `num/den * Q1^a Q2^b U^c : z^(e/D)` sorted by z-exponent then exponent vector.
pub fn serialize_series<C: Field + CanonicalTerms>(s: &PuiseuxSeries<C>) -> Result<String> {
    let d = s.grid().denominator();
    let mut out = format!("# grid {d}\n# trunc {}\n", s.trunc());
    for (e, c) in s.iter() {
        let mut terms =
            c.canonical_terms().ok_or_else(|| Error::InvalidArgument(format!("coefficient of z^({e}/{d}) is not a finite monomial sum")))?;
        terms.sort_by_key(|a| a.0);
        for (m, r) in terms {
            let [a, b, u] = m.0;
            let _ = writeln!(out, "{}/{} * Q1^{a} Q2^{b} U^{u} : z^({e}/{d})", r.numer(), r.denom());
        }
    }
    Ok(out)
}

fn parse_power(tok: &str, name: &str) -> Option<i64> {
    tok.strip_prefix(name)?.strip_prefix('^')?.parse().ok()
}

/// Inverse of [`serialize_series`].
pub fn parse_series<C: Field + CanonicalTerms>(text: &str) -> Result<PuiseuxSeries<C>> {
    let bad = |line: &str| Error::Parse(format!("malformed series line {line:?}"));
    let mut grid = None;
    let mut trunc = None;
    let mut terms: std::collections::BTreeMap<i64, Vec<(Monomial, Rational)>> = Default::default();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        if let Some(v) = line.strip_prefix("# grid ") {
            grid = Some(Grid::new(v.trim().parse().map_err(|_| bad(line))?)?);
            continue;
        }
        if let Some(v) = line.strip_prefix("# trunc ") {
            trunc = Some(v.trim().parse::<i64>().map_err(|_| bad(line))?);
            continue;
        }
        let (coef, rest) = line.split_once(" * ").ok_or_else(|| bad(line))?;
        let (mono, z) = rest.split_once(" : ").ok_or_else(|| bad(line))?;
        let toks: Vec<&str> = mono.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(bad(line));
        }
        let m = Monomial::new(
            parse_power(toks[0], "Q1").ok_or_else(|| bad(line))?,
            parse_power(toks[1], "Q2").ok_or_else(|| bad(line))?,
            parse_power(toks[2], "U").ok_or_else(|| bad(line))?,
        );
        let inner = z.strip_prefix("z^(").and_then(|s| s.strip_suffix(')')).ok_or_else(|| bad(line))?;
        let (e, d) = inner.split_once('/').ok_or_else(|| bad(line))?;
        let e: i64 = e.parse().map_err(|_| bad(line))?;
        let d: i64 = d.parse().map_err(|_| bad(line))?;
        if grid.map(|g: Grid| g.denominator()) != Some(d) {
            return Err(bad(line));
        }
        terms.entry(e).or_default().push((m, parse_rational(coef)?));
    }
    let grid = grid.ok_or_else(|| Error::Parse("missing grid header".into()))?;
    let trunc = trunc.ok_or_else(|| Error::Parse("missing trunc header".into()))?;
    let mut s = PuiseuxSeries::zero(grid, trunc);
    for (e, ts) in terms {
        if e > trunc {
            return Err(Error::Parse(format!("term z^({e}/{}) beyond truncation", grid.denominator())));
        }
        let c = C::from_canonical_terms(ts).ok_or_else(|| Error::Parse("coefficient not representable in this backend".into()))?;
        s.add_term(e, &c);
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, ratio, RationalFunction};

    #[test]
    fn rationals() {
        assert_eq!(format_rational(&ratio(-3, 6)), "-1/2");
        assert_eq!(format_rational(&int(4)), "4");
        assert_eq!(parse_rational("-1/2").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("0.125").unwrap(), ratio(1, 8));
        assert_eq!(parse_rational("-1.5").unwrap(), ratio(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn human_rendering() {
        let g = Grid::default();
        let s: PuiseuxSeries<RationalFunction> = PuiseuxSeries::from_coeffs(
            g,
            32,
            [(0, RationalFunction::from_rational(int(1))), (16, RationalFunction::monomial(g.q1() * g.q2(), int(-1)))],
        );
        assert_eq!(format_series_human(&s), "1 - q1 q2 z");
        assert_eq!(format_monomial(Monomial::new(4, -16, 8), g), "q1^(1/4) q2^-1 u^(1/2)");
    }

    #[test]
    fn symbolic_round_trip() {
        let g = Grid::default();
        let c = RationalFunction::from_poly(LaurentPoly::from_terms([([1, 0, 0], int(2)), ([0, -3, 5], ratio(-1, 3))]));
        let s: PuiseuxSeries<RationalFunction> = PuiseuxSeries::from_coeffs(g, 40, [(4, c), (0, RationalFunction::from_rational(int(1)))]);
        let text = serialize_series(&s).unwrap();
        assert!(text.contains("-1/3 * Q1^0 Q2^-3 U^5 : z^(4/16)"));
        let back: PuiseuxSeries<RationalFunction> = parse_series(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(serialize_series(&back).unwrap(), text);
    }
}
