//! Parsers for the text formats: field specs `p` or `p^k`, polynomials in
//! `3*t^2+1` style with bracketed extension coefficients `[a0,a1]`, curve
//! specs `y^2 = x^3 + (A)x + (B)`, and the argument list itself. Parse
//! errors carry byte positions into the offending string.

use std::fmt;

use twistlab_core::gf::{make_field, Field, FieldElement};
use twistlab_core::polyring::Poly;

/// A parse failure with the position (byte offset) where it happened.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub what: String,
    pub position: usize,
}

impl ParseError {
    fn new(what: impl Into<String>, position: usize) -> ParseError {
        ParseError {
            what: what.into(),
            position,
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at position {}", self.what, self.position)
    }
}

/// `"5"` or `"7^2"` into `(p, k)`.
pub fn parse_field_spec(s: &str) -> Result<(u64, u32), ParseError> {
    let s = s.trim();
    let (p_str, k_str) = match s.split_once('^') {
        Some((a, b)) => (a, Some(b)),
        None => (s, None),
    };
    let p: u64 = p_str
        .parse()
        .map_err(|_| ParseError::new(format!("invalid characteristic '{p_str}'"), 0))?;
    let k: u32 = match k_str {
        Some(ks) => ks.parse().map_err(|_| {
            ParseError::new(format!("invalid extension degree '{ks}'"), p_str.len() + 1)
        })?,
        None => 1,
    };
    Ok((p, k))
}

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(s: &'a str) -> Scanner<'a> {
        Scanner {
            bytes: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        Some(b)
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        match self.peek() {
            Some(got) if got == b => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(ParseError::new(
                format!("expected '{}'", b as char),
                self.pos,
            )),
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn integer(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(ParseError::new("expected an integer", start));
        }
        core::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| ParseError::new("integer out of range", start))
    }
}

/// One coefficient: `12`, `-3` (only after an operator), or `[a0,a1,...]`
/// for extension elements (residues little-endian in the modulus basis).
fn coefficient(sc: &mut Scanner, field: &Field) -> Result<FieldElement, ParseError> {
    match sc.peek() {
        Some(b'[') => {
            let open = sc.pos;
            sc.bump();
            let mut residues = Vec::new();
            loop {
                residues.push(sc.integer()?);
                match sc.bump() {
                    Some(b',') => continue,
                    Some(b']') => break,
                    _ => return Err(ParseError::new("expected ',' or ']'", sc.pos)),
                }
            }
            field
                .element_from_residues(&residues)
                .map_err(|_| ParseError::new("residue vector has the wrong length", open))
        }
        Some(b) if b.is_ascii_digit() => {
            let v = sc.integer()?;
            Ok(field.from_u64(v))
        }
        _ => Err(ParseError::new("expected a coefficient", sc.pos)),
    }
}

/// `coeff`, `coeff*t^k`, `t^k`, `t` — one monomial.
fn term(sc: &mut Scanner, field: &Field) -> Result<(FieldElement, usize), ParseError> {
    let coeff = match sc.peek() {
        Some(b't') => field.one(),
        _ => {
            let c = coefficient(sc, field)?;
            if sc.peek() == Some(b'*') {
                sc.bump();
            } else {
                return Ok((c, 0));
            }
            c
        }
    };
    match sc.peek() {
        Some(b't') => {
            sc.bump();
            if sc.peek() == Some(b'^') {
                sc.bump();
                let e = sc.integer()?;
                if e > 10_000 {
                    return Err(ParseError::new("exponent too large", sc.pos));
                }
                Ok((coeff, e as usize))
            } else {
                Ok((coeff, 1))
            }
        }
        _ => Err(ParseError::new("expected 't'", sc.pos)),
    }
}

fn poly_inner(sc: &mut Scanner, field: &Field) -> Result<Poly, ParseError> {
    let mut acc = Poly::zero(field);
    let mut negate = false;
    if sc.peek() == Some(b'-') {
        sc.bump();
        negate = true;
    }
    loop {
        let (coeff, deg) = term(sc, field)?;
        let coeff = if negate { coeff.neg() } else { coeff };
        acc = acc.add(&Poly::monomial(coeff, deg));
        match sc.peek() {
            Some(b'+') => {
                sc.bump();
                negate = false;
            }
            Some(b'-') => {
                sc.bump();
                negate = true;
            }
            _ => return Ok(acc),
        }
    }
}

/// Parse a full polynomial string; round-trips with the canonical printer.
pub fn parse_poly(field: &Field, s: &str) -> Result<Poly, ParseError> {
    let mut sc = Scanner::new(s);
    let p = poly_inner(&mut sc, field)?;
    if !sc.at_end() {
        return Err(ParseError::new("unexpected trailing input", sc.pos));
    }
    Ok(p)
}

/// Parse `y^2 = x^3 + (A)x + (B)`; whitespace-insensitive.
pub fn parse_curve_spec(field: &Field, s: &str) -> Result<(Poly, Poly), ParseError> {
    let mut sc = Scanner::new(s);
    for lit in [b'y', b'^', b'2', b'=', b'x', b'^', b'3', b'+', b'('] {
        sc.expect(lit)?;
    }
    let a = poly_inner(&mut sc, field)?;
    sc.expect(b')')?;
    sc.expect(b'x')?;
    sc.expect(b'+')?;
    sc.expect(b'(')?;
    let b = poly_inner(&mut sc, field)?;
    sc.expect(b')')?;
    if !sc.at_end() {
        return Err(ParseError::new("unexpected trailing input", sc.pos));
    }
    Ok((a, b))
}

/// Build the field for a parsed spec, mapping construction failures to the
/// precondition channel (they are semantic, not syntactic).
pub fn field_from_spec(spec: &str) -> Result<Field, FieldSpecError> {
    let (p, k) = parse_field_spec(spec).map_err(FieldSpecError::Parse)?;
    make_field(p, k, None).map_err(FieldSpecError::Construct)
}

#[derive(Debug)]
pub enum FieldSpecError {
    Parse(ParseError),
    Construct(twistlab_core::gf::GfError),
}

/// Flag-style argument list: `--name value` pairs plus boolean switches.
pub struct Args {
    pairs: Vec<(String, Option<String>)>,
}

const SWITCHES: &[&str] = &["classes", "quick"];

impl Args {
    pub fn parse(args: &[String]) -> Result<Args, ParseError> {
        let mut pairs = Vec::new();
        let mut i = 0;
        while i < args.len() {
            let arg = &args[i];
            let name = arg
                .strip_prefix("--")
                .ok_or_else(|| ParseError::new(format!("expected a --flag, got '{arg}'"), 0))?;
            if SWITCHES.contains(&name) {
                pairs.push((name.to_string(), None));
                i += 1;
                continue;
            }
            let value = args
                .get(i + 1)
                .ok_or_else(|| ParseError::new(format!("flag --{name} needs a value"), 0))?;
            pairs.push((name.to_string(), Some(value.clone())));
            i += 2;
        }
        Ok(Args { pairs })
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        self.pairs
            .iter()
            .find(|(n, _)| n == name)
            .and_then(|(_, v)| v.as_deref())
    }

    pub fn has(&self, name: &str) -> bool {
        self.pairs.iter().any(|(n, _)| n == name)
    }

    pub fn require(&self, name: &str) -> Result<&str, ParseError> {
        self.get(name)
            .ok_or_else(|| ParseError::new(format!("missing required flag --{name}"), 0))
    }

    pub fn get_u64(&self, name: &str) -> Result<Option<u64>, ParseError> {
        match self.get(name) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| ParseError::new(format!("flag --{name}: invalid integer '{v}'"), 0)),
        }
    }

    pub fn require_u64(&self, name: &str) -> Result<u64, ParseError> {
        self.get_u64(name)?
            .ok_or_else(|| ParseError::new(format!("missing required flag --{name}"), 0))
    }

    /// Flags that were provided but are not in the allowed set.
    pub fn unknown_flags(&self, allowed: &[&str]) -> Vec<String> {
        self.pairs
            .iter()
            .filter(|(n, _)| !allowed.contains(&n.as_str()))
            .map(|(n, _)| n.clone())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Field {
        make_field(5, 1, None).unwrap()
    }

    #[test]
    fn field_specs() {
        assert_eq!(parse_field_spec("5").unwrap(), (5, 1));
        assert_eq!(parse_field_spec("7^2").unwrap(), (7, 2));
        assert!(parse_field_spec("abc").is_err());
    }

    #[test]
    fn poly_round_trip() {
        let f = f5();
        for s in ["3*t^2+1", "t", "0", "t^2+t+2", "4*t^3+2*t+3", "2"] {
            let p = parse_poly(&f, s).unwrap();
            assert_eq!(format!("{p}"), s);
        }
        // Legal variants normalize on output.
        let p = parse_poly(&f, " 1 + 3 * t ^ 2 ").unwrap();
        assert_eq!(format!("{p}"), "3*t^2+1");
        let p = parse_poly(&f, "t-1").unwrap();
        assert_eq!(format!("{p}"), "t+4");
        let p = parse_poly(&f, "-t").unwrap();
        assert_eq!(format!("{p}"), "4*t");
        let p = parse_poly(&f, "6").unwrap();
        assert_eq!(format!("{p}"), "1");
    }

    #[test]
    fn extension_coefficients() {
        let f49 = make_field(7, 2, None).unwrap();
        let p = parse_poly(&f49, "[1,2]*t+[0,3]").unwrap();
        assert_eq!(format!("{p}"), "[1,2]*t+[0,3]");
        assert!(parse_poly(&f49, "[1]*t").is_err());
    }

    #[test]
    fn parse_error_positions() {
        let f = f5();
        let e = parse_poly(&f, "3*t^2+?").unwrap_err();
        assert_eq!(e.position, 6);
        let e = parse_poly(&f, "3*x").unwrap_err();
        assert_eq!(e.position, 2);
    }

    #[test]
    fn curve_specs() {
        let f = f5();
        let (a, b) = parse_curve_spec(&f, "y^2 = x^3 + (t)x + (t)").unwrap();
        assert_eq!(format!("{a}"), "t");
        assert_eq!(format!("{b}"), "t");
        let (a, b) = parse_curve_spec(&f, "y^2=x^3+(3*t^2+1)x+(0)").unwrap();
        assert_eq!(format!("{a}"), "3*t^2+1");
        assert!(b.is_zero());
        assert!(parse_curve_spec(&f, "y^2=x^3+tx+1").is_err());
    }

    #[test]
    fn args_parsing() {
        let raw: Vec<String> = ["--p", "3", "--d", "5", "--classes"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let args = Args::parse(&raw).unwrap();
        assert_eq!(args.require_u64("p").unwrap(), 3);
        assert!(args.has("classes"));
        assert!(args.get("missing").is_none());
        assert!(args.unknown_flags(&["p", "d", "classes"]).is_empty());
        assert_eq!(args.unknown_flags(&["p"]), vec!["d", "classes"]);
    }
}
