//! Quotients of polynomial rings by monomial and linear rewrite rules.
//!
//! A presentation lists generators, a monomial basis and rules rewriting
//! non-basis monomials into linear combinations of monomials. Products of
//! basis monomials are reduced by repeatedly applying the first rule whose
//! left-hand side divides the current monomial.

use std::cmp::Reverse;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::AlgebraData;
use crate::error::AlgebraError;
use crate::field::{parse_rational, Field};
use crate::matrix::Vector;

const MAX_REWRITE_DEPTH: usize = 64;

/// Exponent vector over the generators of a presentation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    /// Total degree, then larger exponents of earlier generators first.
    fn order_key(&self) -> (u32, Reverse<Vec<u32>>) {
        (self.degree(), Reverse(self.0.clone()))
    }

    pub fn format(&self, generators: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(generators)
            .filter(|(e, _)| **e > 0)
            .map(|(e, g)| if *e == 1 { g.clone() } else { format!("{g}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

type LinComb = Vec<(BigRational, Monomial)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    basis: Vec<Monomial>,
    rules: Vec<(Monomial, LinComb)>,
}

impl Presentation {
    /// Parses a presentation from strings. The basis is re-sorted by total
    /// degree and then lexicographically in generator order; rules keep
    /// their given order.
    pub fn new(generators: &[&str], basis: &[&str], rules: &[(&str, &str)]) -> Result<Self, AlgebraError> {
        let generators: Vec<String> = generators.iter().map(|g| g.trim().to_string()).collect();
        for (i, g) in generators.iter().enumerate() {
            if g.is_empty() || !g.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(malformed(format!("bad generator name `{g}`")));
            }
            if g.chars().next().is_some_and(|c| c.is_ascii_digit()) {
                return Err(malformed(format!("generator `{g}` starts with a digit")));
            }
            if generators[..i].contains(g) {
                return Err(malformed(format!("duplicate generator `{g}`")));
            }
        }
        let mut parsed_basis = Vec::new();
        for b in basis {
            let m = parse_monomial(&generators, b)?;
            if parsed_basis.contains(&m) {
                return Err(malformed(format!("duplicate basis monomial `{b}`")));
            }
            parsed_basis.push(m);
        }
        parsed_basis.sort_by_key(Monomial::order_key);
        if parsed_basis.first() != Some(&Monomial::one(generators.len())) {
            return Err(malformed("the basis must contain the unit monomial `1`".into()));
        }
        let mut parsed_rules = Vec::new();
        for (lhs, rhs) in rules {
            let l = parse_monomial(&generators, lhs)?;
            if parsed_basis.contains(&l) {
                return Err(malformed(format!("rule rewrites basis monomial `{lhs}`")));
            }
            if parsed_rules.iter().any(|(m, _)| m == &l) {
                return Err(malformed(format!("duplicate rule for `{lhs}`")));
            }
            parsed_rules.push((l, parse_lincomb(&generators, rhs)?));
        }
        Ok(Presentation {
            generators,
            basis: parsed_basis,
            rules: parsed_rules,
        })
    }

    /// Convenience for rule maps read from files.
    pub fn from_map(
        generators: &[String],
        basis: &[String],
        rules: &BTreeMap<String, String>,
    ) -> Result<Self, AlgebraError> {
        let g: Vec<&str> = generators.iter().map(String::as_str).collect();
        let b: Vec<&str> = basis.iter().map(String::as_str).collect();
        let r: Vec<(&str, &str)> = rules.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect();
        Self::new(&g, &b, &r)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn basis_labels(&self) -> Vec<String> {
        self.basis.iter().map(|m| m.format(&self.generators)).collect()
    }

    pub fn rules(&self) -> impl Iterator<Item = (String, String)> + '_ {
        self.rules
            .iter()
            .map(|(l, r)| (l.format(&self.generators), self.format_lincomb(r)))
    }

    fn format_lincomb(&self, c: &LinComb) -> String {
        if c.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (coef, m)) in c.iter().enumerate() {
            let neg = coef < &BigRational::zero();
            let abs = if neg { -coef.clone() } else { coef.clone() };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = m.format(&self.generators);
            if abs.is_one() {
                s.push_str(&mono);
            } else if mono == "1" {
                s.push_str(&abs.to_string());
            } else {
                s.push_str(&format!("{abs}*{mono}"));
            }
        }
        s
    }

    /// Coordinates of a monomial in the basis, over Q.
    fn reduce(
        &self,
        m: &Monomial,
        depth: usize,
        memo: &mut HashMap<Monomial, Vec<BigRational>>,
    ) -> Result<Vec<BigRational>, AlgebraError> {
        if let Some(v) = memo.get(m) {
            return Ok(v.clone());
        }
        let d = self.basis.len();
        let mut out = vec![BigRational::zero(); d];
        if let Some(i) = self.basis.iter().position(|b| b == m) {
            out[i] = BigRational::one();
        } else {
            if depth > MAX_REWRITE_DEPTH {
                return Err(AlgebraError::InconsistentPresentation(format!(
                    "rewriting `{}` does not terminate",
                    m.format(&self.generators)
                )));
            }
            let (lhs, rhs) = self.rules.iter().find(|(lhs, _)| lhs.divides(m)).ok_or_else(|| {
                malformed(format!(
                    "no rule reduces `{}` and it is not a basis monomial",
                    m.format(&self.generators)
                ))
            })?;
            let q = lhs.quotient_of(m);
            for (coef, mono) in rhs {
                let sub = self.reduce(&mono.times(&q), depth + 1, memo)?;
                for (slot, s) in out.iter_mut().zip(sub) {
                    *slot += coef * s;
                }
            }
        }
        memo.insert(m.clone(), out.clone());
        Ok(out)
    }

    /// Builds the structure constants of the quotient ring over `field`.
    pub fn to_algebra(&self, field: Field) -> Result<AlgebraData, AlgebraError> {
        let d = self.basis.len();
        let mut memo = HashMap::new();
        let mut constants = Vec::with_capacity(d * d * d);
        for i in 0..d {
            for j in 0..d {
                let prod = self.basis[i].times(&self.basis[j]);
                for q in self.reduce(&prod, 0, &mut memo)? {
                    constants.push(field.from_rational(&q)?);
                }
            }
        }
        AlgebraData::new(field, self.basis_labels(), constants).map_err(|e| match e {
            AlgebraError::InvalidStructureConstants(msg) => AlgebraError::InconsistentPresentation(msg),
            other => other,
        })
    }

    /// Evaluates a monomial inside `a` as a product of generator images,
    /// independently of the rewrite path used to build `a`.
    pub fn evaluate(&self, a: &AlgebraData, m: &Monomial) -> Result<Vector, AlgebraError> {
        let mut memo = HashMap::new();
        let mut acc = a.unit();
        for (g, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let mut gm = Monomial::one(self.generators.len());
            gm.0[g] = 1;
            let coords = self.reduce(&gm, 0, &mut memo)?;
            let gv: Vector = coords
                .iter()
                .map(|q| a.field().from_rational(q))
                .collect::<Result<_, _>>()?;
            acc = a.mul(&acc, &a.pow(&gv, e));
        }
        Ok(acc)
    }

    /// Reads each rule back from the multiplication of `a`: for every rule
    /// `lhs → rhs` the pair (value of lhs in `a`, value of rhs in `a`).
    pub fn read_off_rules(&self, a: &AlgebraData) -> Result<Vec<(String, Vector, Vector)>, AlgebraError> {
        let mut out = Vec::new();
        for (lhs, rhs) in &self.rules {
            let left = self.evaluate(a, lhs)?;
            let mut right = a.zero();
            for (coef, mono) in rhs {
                let c = a.field().from_rational(coef)?;
                let v = self.evaluate(a, mono)?;
                for (slot, x) in right.iter_mut().zip(&v) {
                    *slot = &*slot + &(&c * x);
                }
            }
            out.push((lhs.format(&self.generators), left, right));
        }
        Ok(out)
    }

    /// True when every rule holds in `a` and every basis monomial evaluates
    /// to its own basis vector.
    pub fn relations_hold(&self, a: &AlgebraData) -> Result<bool, AlgebraError> {
        for (i, b) in self.basis.iter().enumerate() {
            if self.evaluate(a, b)? != a.basis_vector(i) {
                return Ok(false);
            }
        }
        Ok(self.read_off_rules(a)?.iter().all(|(_, l, r)| l == r))
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self
            .rules()
            .map(|(l, r)| if r == "0" { l } else { format!("{l} - ({r})") })
            .collect();
        write!(f, "k[{}]/({})", self.generators.join(","), rels.join(", "))
    }
}

fn malformed(msg: String) -> AlgebraError {
    AlgebraError::MalformedPresentation(msg)
}

fn parse_monomial(generators: &[String], s: &str) -> Result<Monomial, AlgebraError> {
    let t = s.trim();
    let mut m = Monomial::one(generators.len());
    if t == "1" {
        return Ok(m);
    }
    if t.is_empty() {
        return Err(malformed("empty monomial".into()));
    }
    for factor in t.split('*') {
        let factor = factor.trim();
        let (name, exp) = match factor.split_once('^') {
            Some((n, e)) => {
                let e: u32 = e
                    .trim()
                    .parse()
                    .map_err(|_| malformed(format!("bad exponent in `{s}`")))?;
                (n.trim(), e)
            }
            None => (factor, 1),
        };
        let g = generators
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| malformed(format!("unknown generator `{name}` in `{s}`")))?;
        m.0[g] += exp;
    }
    Ok(m)
}

fn parse_lincomb(generators: &[String], s: &str) -> Result<LinComb, AlgebraError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(malformed("empty right-hand side".into()));
    }
    // Split into signed terms; a sign directly after `^` or `/` is not a separator.
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    let mut prev: Option<char> = None;
    for ch in compact.chars() {
        if (ch == '+' || ch == '-') && !matches!(prev, None | Some('^') | Some('/') | Some('*')) {
            terms.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else if (ch == '+' || ch == '-') && prev.is_none() {
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
        prev = Some(ch);
    }
    terms.push((neg, cur));
    let mut acc: BTreeMap<Monomial, BigRational> = BTreeMap::new();
    for (neg, term) in terms {
        if term.is_empty() {
            return Err(malformed(format!("empty term in `{s}`")));
        }
        let mut coef = BigRational::one();
        let mut mono = Monomial::one(generators.len());
        for factor in term.split('*') {
            let starts_numeric = factor.chars().next().is_some_and(|c| c.is_ascii_digit());
            if starts_numeric && !factor.contains('^') {
                coef *=
                    parse_rational(factor).map_err(|_| malformed(format!("bad coefficient `{factor}` in `{s}`")))?;
            } else {
                mono = mono.times(&parse_monomial(generators, factor)?);
            }
        }
        if neg {
            coef = -coef;
        }
        *acc.entry(mono).or_insert_with(BigRational::zero) += coef;
    }
    let mut out: LinComb = acc
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(m, c)| (c, m))
        .collect();
    out.sort_by_key(|(_, m)| m.order_key());
    Ok(out)
}
