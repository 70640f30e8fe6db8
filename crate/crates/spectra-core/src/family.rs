//! One-parameter curve families and convergence scans.
//!
//! A family is a list of Puiseux pairs whose entries are integer polynomials
//! in a parameter `k`, written in a small expression language:
//!
//! ```text
//! 2*k,1;2,2*k^3+1        →  ((2k, 1), (2, 2k³ + 1))
//! ```
//!
//! Instantiating at a concrete `k` yields ordinary pairs (validated like any
//! other input). A *scan* instantiates the family along a range of `k`,
//! samples `φ_f` on a grid, and records for each member the distance of
//! `φ_f` from a chosen target — either the zero function or the fixed
//! non-vanishing limit arising from the family `((2k, 1), (2, 2k³ + 1))`.
//! A verdict over at least three rows classifies the trend.

use num_traits::{One, Signed, Zero};

use crate::curve::{derive_invariants, validate_pairs, PuiseuxPairs};
use crate::distribution::phi_closed;
use crate::error::Error;
use crate::exact::{fract, rat, rat_int, BigInt, Rational};

/// Integer polynomial expression in the single variable `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyExpr {
    Const(BigInt),
    Var,
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Neg(Box<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
}

impl PolyExpr {
    pub fn eval(&self, k: &BigInt) -> BigInt {
        match self {
            PolyExpr::Const(c) => c.clone(),
            PolyExpr::Var => k.clone(),
            PolyExpr::Add(a, b) => a.eval(k) + b.eval(k),
            PolyExpr::Sub(a, b) => a.eval(k) - b.eval(k),
            PolyExpr::Mul(a, b) => a.eval(k) * b.eval(k),
            PolyExpr::Neg(a) => -a.eval(k),
            PolyExpr::Pow(a, e) => num_traits::Pow::pow(&a.eval(k), *e),
        }
    }
}

/// A parsed family: one polynomial pair per Puiseux pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pairs: Vec<(PolyExpr, PolyExpr)>,
}

impl FamilySpec {
    pub fn pairs(&self) -> &[(PolyExpr, PolyExpr)] {
        &self.pairs
    }

    /// Evaluate every polynomial at `k` and validate the resulting pairs.
    pub fn instantiate(&self, k: i64) -> Result<PuiseuxPairs, Error> {
        let kb = BigInt::from(k);
        let pairs: Vec<(BigInt, BigInt)> = self
            .pairs
            .iter()
            .map(|(n, l)| (n.eval(&kb), l.eval(&kb)))
            .collect();
        validate_pairs(&pairs).map_err(|e| Error::FamilyInstantiation {
            k,
            source: Box::new(e),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    Var,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
    Semi,
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    input_len: usize,
}

impl Parser {
    fn tokenize(input: &str) -> Result<Vec<(usize, Token)>, Error> {
        let mut tokens = Vec::new();
        let bytes = input.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            match c {
                ' ' | '\t' | '\n' | '\r' => i += 1,
                '+' => {
                    tokens.push((i, Token::Plus));
                    i += 1;
                }
                '-' => {
                    tokens.push((i, Token::Minus));
                    i += 1;
                }
                '*' => {
                    tokens.push((i, Token::Star));
                    i += 1;
                }
                '^' => {
                    tokens.push((i, Token::Caret));
                    i += 1;
                }
                '(' => {
                    tokens.push((i, Token::LParen));
                    i += 1;
                }
                ')' => {
                    tokens.push((i, Token::RParen));
                    i += 1;
                }
                ',' => {
                    tokens.push((i, Token::Comma));
                    i += 1;
                }
                ';' => {
                    tokens.push((i, Token::Semi));
                    i += 1;
                }
                'k' => {
                    tokens.push((i, Token::Var));
                    i += 1;
                }
                '0'..='9' => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let lit: BigInt = input[start..i].parse().expect("digit run");
                    tokens.push((start, Token::Int(lit)));
                }
                _ => {
                    return Err(Error::FamilySyntax {
                        pos: i,
                        msg: format!("unexpected character {c:?}"),
                    })
                }
            }
        }
        Ok(tokens)
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or(self.input_len)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: &Token, what: &str) -> Result<(), Error> {
        if self.peek() == Some(want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::FamilySyntax {
                pos: self.here(),
                msg: format!("expected {what}"),
            })
        }
    }

    // family := pair (';' pair)*
    fn family(&mut self) -> Result<FamilySpec, Error> {
        let mut pairs = vec![self.pair()?];
        while self.peek() == Some(&Token::Semi) {
            self.pos += 1;
            pairs.push(self.pair()?);
        }
        if self.pos < self.tokens.len() {
            return Err(Error::FamilySyntax {
                pos: self.here(),
                msg: "expected ';' or end of input".to_string(),
            });
        }
        Ok(FamilySpec { pairs })
    }

    // pair := expr ',' expr
    fn pair(&mut self) -> Result<(PolyExpr, PolyExpr), Error> {
        let n = self.expr()?;
        self.expect(&Token::Comma, "','")?;
        let l = self.expr()?;
        Ok((n, l))
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> Result<PolyExpr, Error> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = PolyExpr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = PolyExpr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := unary ('*' unary)*
    fn term(&mut self) -> Result<PolyExpr, Error> {
        let mut acc = self.unary()?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            acc = PolyExpr::Mul(Box::new(acc), Box::new(self.unary()?));
        }
        Ok(acc)
    }

    // unary := '-' unary | power
    fn unary(&mut self) -> Result<PolyExpr, Error> {
        if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            Ok(PolyExpr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    // power := atom ('^' uint)?
    fn power(&mut self) -> Result<PolyExpr, Error> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            let at = self.here();
            match self.bump() {
                Some(Token::Int(e)) => {
                    let exp = u32::try_from(&e).map_err(|_| Error::FamilySyntax {
                        pos: at,
                        msg: format!("exponent {e} is too large"),
                    })?;
                    Ok(PolyExpr::Pow(Box::new(base), exp))
                }
                _ => Err(Error::FamilySyntax {
                    pos: at,
                    msg: "exponent must be an integer literal".to_string(),
                }),
            }
        } else {
            Ok(base)
        }
    }

    // atom := uint | 'k' | '(' expr ')'
    fn atom(&mut self) -> Result<PolyExpr, Error> {
        let at = self.here();
        match self.bump() {
            Some(Token::Int(v)) => Ok(PolyExpr::Const(v)),
            Some(Token::Var) => Ok(PolyExpr::Var),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                self.expect(&Token::RParen, "')'")?;
                Ok(inner)
            }
            _ => Err(Error::FamilySyntax {
                pos: at,
                msg: "expected an integer, 'k', or '('".to_string(),
            }),
        }
    }
}

/// Parse a family expression like `2*k,1;2,2*k^3+1`.
///
/// Grammar: pairs separated by `;`, each `n-poly , l-poly`; polynomials
/// over `k` built from integer literals, `+`, `-` (binary and unary), `*`,
/// `^` with a literal exponent, and parentheses.
pub fn parse_family(input: &str) -> Result<FamilySpec, Error> {
    let tokens = Parser::tokenize(input)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        input_len: input.len(),
    };
    parser.family()
}

/// What a scan measures the distance of `φ_f` to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetSelector {
    /// Distance to the zero function.
    Zero,
    /// Distance to the non-vanishing limit of the family
    /// `((2k, 1), (2, 2k³ + 1))`, see [`phi_limit_counterexample`].
    CounterexampleLimit,
}

/// The limit of `φ_f` along the family `((2k, 1), (2, 2k³ + 1))`:
/// `(1/2)·r(1−r) − (1/4)·{2r}(1−{2r})` for `r ∈ [0, 1)`.
///
/// This function is not identically zero (it equals 1/8 at `r = 1/2`), which
/// is what makes that family a counterexample to φ-limits vanishing.
pub fn phi_limit_counterexample(r: &Rational) -> Result<Rational, Error> {
    if r.is_negative() || *r >= Rational::one() {
        return Err(Error::ROutOfRange { r: r.to_string() });
    }
    let one = Rational::one();
    let t = fract(&(rat_int(2) * r));
    Ok(rat(1, 2) * r * (&one - r) - rat(1, 4) * &t * (&one - &t))
}

/// One member of a family scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRow {
    pub k: i64,
    pub mu: BigInt,
    pub beta_g: BigInt,
    /// `β_g / μ`.
    pub ratio: Rational,
    pub lct: Rational,
    /// `max_r |φ_f(r) − target(r)|` over the scan grid.
    pub sup_dev: Rational,
}

/// The default scan grid `{t/256 : 1 ≤ t < 256}` (255 points).
pub fn default_scan_grid() -> Vec<Rational> {
    (1..256).map(|t| rat(t, 256)).collect()
}

/// Instantiate `family` at each `k`, sampling `|φ_f − target|` on `grid`.
///
/// An empty grid yields `sup_dev = 0`. Rows come back in the order of `ks`.
pub fn scan_family(
    family: &FamilySpec,
    ks: &[i64],
    grid: &[Rational],
    target: TargetSelector,
) -> Result<Vec<ScanRow>, Error> {
    let mut rows = Vec::with_capacity(ks.len());
    for &k in ks {
        let pairs = family.instantiate(k)?;
        let inv = derive_invariants(&pairs);
        let mut sup = Rational::zero();
        for r in grid {
            let phi = phi_closed(&inv, r)?;
            let dev = match target {
                TargetSelector::Zero => phi.abs(),
                TargetSelector::CounterexampleLimit => {
                    (phi - phi_limit_counterexample(r)?).abs()
                }
            };
            if dev > sup {
                sup = dev;
            }
        }
        rows.push(ScanRow {
            k,
            mu: inv.mu.clone(),
            beta_g: inv.beta_i(inv.g).clone(),
            ratio: inv.beta_g_over_mu.clone(),
            lct: inv.lct.clone(),
            sup_dev: sup,
        });
    }
    Ok(rows)
}

/// Trend classification over a scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trend {
    /// `β_g/μ` and the deviation both strictly decrease.
    Converges,
    /// Only the log canonical threshold strictly decreases.
    LctDecreasingOnly,
    NonConvergent,
}

/// Monotonicity flags and overall trend for a scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConvergenceVerdict {
    pub ratio_decreasing: bool,
    pub lct_decreasing: bool,
    pub sup_dev_decreasing: bool,
    pub trend: Trend,
}

fn strictly_decreasing<'a, I: Iterator<Item = &'a Rational>>(vals: I) -> bool {
    let mut prev: Option<&Rational> = None;
    for v in vals {
        if let Some(p) = prev {
            if v >= p {
                return false;
            }
        }
        prev = Some(v);
    }
    true
}

/// Classify a scan of at least three rows (sorted by strictly increasing
/// `k`): [`Trend::Converges`] when both the ratio `β_g/μ` and the sup
/// deviation strictly decrease, otherwise [`Trend::LctDecreasingOnly`] when
/// the log canonical threshold strictly decreases, otherwise
/// [`Trend::NonConvergent`].
pub fn convergence_verdict(rows: &[ScanRow]) -> Result<ConvergenceVerdict, Error> {
    if rows.len() < 3 {
        return Err(Error::InsufficientRows { got: rows.len() });
    }
    if !rows.windows(2).all(|w| w[0].k < w[1].k) {
        return Err(Error::NonMonotonicRows);
    }
    let ratio_decreasing = strictly_decreasing(rows.iter().map(|r| &r.ratio));
    let lct_decreasing = strictly_decreasing(rows.iter().map(|r| &r.lct));
    let sup_dev_decreasing = strictly_decreasing(rows.iter().map(|r| &r.sup_dev));
    let trend = if ratio_decreasing && sup_dev_decreasing {
        Trend::Converges
    } else if lct_decreasing {
        Trend::LctDecreasingOnly
    } else {
        Trend::NonConvergent
    };
    Ok(ConvergenceVerdict {
        ratio_decreasing,
        lct_decreasing,
        sup_dev_decreasing,
        trend,
    })
}
