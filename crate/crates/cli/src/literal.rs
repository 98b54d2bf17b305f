//! Element literals:
//!
//! ```text
//! elem  := ("perm:" PERM "/")? base
//! base  := "w:" [123]* | "x:" INT | "theta:" INT "," INT (":" FLAGS)?
//! FLAGS := nonempty subset of {r, s}
//! ```

use kla2_core::coxeter::{color_perm, theta_variant, x_elt, Elt, Gen, Perm3};
use kla2_core::Error;

fn err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn eat(&mut self, prefix: &str) -> bool {
        let hit = self.rest().starts_with(prefix);
        if hit {
            self.pos += prefix.len();
        }
        hit
    }

    fn expect(&mut self, c: char) -> Result<(), Error> {
        if self.eat(c.encode_utf8(&mut [0; 4])) {
            Ok(())
        } else {
            Err(err(self.pos, format!("expected {c:?}")))
        }
    }

    fn int(&mut self) -> Result<usize, Error> {
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(err(self.pos, "expected a non-negative integer"));
        }
        let value = self.rest()[..digits]
            .parse()
            .map_err(|_| err(self.pos, "integer too large"))?;
        self.pos += digits;
        Ok(value)
    }
}

pub fn parse_element(text: &str) -> Result<Elt, Error> {
    let mut cur = Cursor { text, pos: 0 };
    let mut sigma = None;
    if cur.eat("perm:") {
        let start = cur.pos;
        let slash = cur
            .rest()
            .find('/')
            .ok_or_else(|| err(text.len(), "expected '/' after the permutation"))?;
        let perm: Perm3 = cur.rest()[..slash]
            .parse()
            .map_err(|_| err(start, "expected a permutation of 123"))?;
        sigma = Some(perm);
        cur.pos += slash + 1;
    }

    let x = if cur.eat("w:") {
        let mut x = Elt::IDENTITY;
        for (i, c) in cur.rest().char_indices() {
            match c {
                '1' | '2' | '3' => x = x.mul_right_gen(Gen::new(c as i64 - '0' as i64)),
                _ => return Err(err(cur.pos + i, format!("unexpected {c:?} in word"))),
            }
        }
        cur.pos = text.len();
        x
    } else if cur.eat("x:") {
        x_elt(cur.int()?)
    } else if cur.eat("theta:") {
        let m = cur.int()?;
        cur.expect(',')?;
        let n = cur.int()?;
        let (mut left_r, mut right_s) = (false, false);
        if cur.eat(":") {
            if cur.rest().is_empty() {
                return Err(err(cur.pos, "expected flags r and/or s"));
            }
            for (i, c) in cur.rest().char_indices() {
                let flag = match c {
                    'r' => &mut left_r,
                    's' => &mut right_s,
                    _ => return Err(err(cur.pos + i, format!("unknown flag {c:?}"))),
                };
                if *flag {
                    return Err(err(cur.pos + i, format!("repeated flag {c:?}")));
                }
                *flag = true;
            }
            cur.pos = text.len();
        }
        theta_variant(m, n, left_r, right_s)
    } else {
        return Err(err(cur.pos, "expected \"w:\", \"x:\" or \"theta:\""));
    };

    if !cur.rest().is_empty() {
        return Err(err(cur.pos, "unexpected trailing input"));
    }
    Ok(match sigma {
        Some(p) => color_perm(p, x),
        None => x,
    })
}

/// Renders a parse error with a caret under the offending byte.
pub fn diagnostic(text: &str, e: &Error) -> String {
    match e {
        Error::Parse { offset, .. } => {
            let col = text[..(*offset).min(text.len())].chars().count();
            format!("{e}\n  {text}\n  {}^", " ".repeat(col))
        }
        _ => e.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use kla2_core::coxeter::{from_word, theta_elt, theta_r, theta_s};

    fn offset(text: &str) -> usize {
        match parse_element(text) {
            Err(Error::Parse { offset, .. }) => offset,
            other => panic!("{text:?}: {other:?}"),
        }
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(parse_element("w:121").unwrap(), from_word(&"121".parse().unwrap()));
        assert_eq!(parse_element("theta:1,1").unwrap(), theta_elt(1, 1));
        let perm: Perm3 = "231".parse().unwrap();
        assert_eq!(parse_element("perm:231/x:5").unwrap(), color_perm(perm, x_elt(5)));
        assert_eq!(parse_element("x:0").unwrap(), Elt::IDENTITY);
        assert_eq!(parse_element("w:").unwrap(), Elt::IDENTITY);
    }

    #[test]
    fn flags() {
        let (m, n) = (2, 1);
        let t = theta_elt(m, n);
        let r = theta_r(m, n);
        let s = theta_s(m, n);
        assert_eq!(parse_element("theta:2,1:r").unwrap(), t.mul_left_gen(r));
        assert_eq!(parse_element("theta:2,1:s").unwrap(), t.mul_right_gen(s));
        assert_eq!(
            parse_element("theta:2,1:sr").unwrap(),
            t.mul_left_gen(r).mul_right_gen(s)
        );
        assert_eq!(
            parse_element("theta:2,1:rs").unwrap(),
            parse_element("theta:2,1:sr").unwrap()
        );
    }

    #[test]
    fn offsets() {
        assert_eq!(offset(""), 0);
        assert_eq!(offset("y:3"), 0);
        assert_eq!(offset("w:1241"), 4);
        assert_eq!(offset("x:"), 2);
        assert_eq!(offset("x:5z"), 3);
        assert_eq!(offset("theta:1;1"), 7);
        assert_eq!(offset("theta:1,1:"), 10);
        assert_eq!(offset("theta:1,1:rr"), 11);
        assert_eq!(offset("theta:1,1:t"), 10);
        assert_eq!(offset("perm:213"), 8);
        assert_eq!(offset("perm:112/x:3"), 5);
        assert_eq!(offset("perm:123/q"), 9);
        assert_eq!(offset("x:99999999999999999999999"), 2);
    }

    #[test]
    fn caret_points_at_offset() {
        let e = parse_element("theta:1;1").unwrap_err();
        let text = diagnostic("theta:1;1", &e);
        assert!(text.ends_with("\n  theta:1;1\n         ^"), "{text}");
    }
}
