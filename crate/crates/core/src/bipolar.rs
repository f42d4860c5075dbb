//! Certificates for n-negativity and n-positivity of knots built by
//! satellite operations, checked against a declared fact base.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const DEFAULT_FACTS: &str = include_str!("../data/facts.json");

pub const SLICE: &str = "slice";
pub const ZERO_NEGATIVE: &str = "0-negative";
pub const ZERO_POSITIVE: &str = "0-positive";
pub const UNKNOTS_POSITIVE: &str = "unknots by changing positive crossings";
pub const UNKNOTS_NEGATIVE: &str = "unknots by changing negative crossings";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Negative,
    Positive,
}

impl Polarity {
    pub fn flip(self) -> Self {
        match self {
            Polarity::Negative => Polarity::Positive,
            Polarity::Positive => Polarity::Negative,
        }
    }
}

/// Depth of an infection curve in the derived series; `Omega` means null-homotopic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Tag", into = "Tag")]
pub enum Depth {
    Finite(u32),
    Omega,
}

/// Filtration level; `All` stands for every `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Tag", into = "Tag")]
pub enum Level {
    Finite(u32),
    All,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Tag {
    Number(u32),
    Word(String),
}

impl TryFrom<Tag> for Depth {
    type Error = String;
    fn try_from(t: Tag) -> std::result::Result<Self, String> {
        match t {
            Tag::Number(n) => Ok(Depth::Finite(n)),
            Tag::Word(w) if w == "omega" => Ok(Depth::Omega),
            Tag::Word(w) => Err(format!("bad depth {w:?}")),
        }
    }
}

impl From<Depth> for Tag {
    fn from(d: Depth) -> Tag {
        match d {
            Depth::Finite(n) => Tag::Number(n),
            Depth::Omega => Tag::Word("omega".into()),
        }
    }
}

impl TryFrom<Tag> for Level {
    type Error = String;
    fn try_from(t: Tag) -> std::result::Result<Self, String> {
        match t {
            Tag::Number(n) => Ok(Level::Finite(n)),
            Tag::Word(w) if w == "all" => Ok(Level::All),
            Tag::Word(w) => Err(format!("bad level {w:?}")),
        }
    }
}

impl From<Level> for Tag {
    fn from(l: Level) -> Tag {
        match l {
            Level::Finite(n) => Tag::Number(n),
            Level::All => Tag::Word("all".into()),
        }
    }
}

impl Level {
    pub fn raise(self, depth: Depth) -> Level {
        match (self, depth) {
            (Level::Finite(n), Depth::Finite(k)) => Level::Finite(n + k),
            _ => Level::All,
        }
    }

    /// Whether a claim at this level implies one at `other`.
    pub fn covers(self, other: Level) -> bool {
        self >= other
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Finite(n) => write!(f, "{n}"),
            Level::All => write!(f, "all"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KnotExpr {
    Base {
        name: String,
    },
    /// A pattern with some of its curves infected; unlisted curves carry the unknot.
    Infection {
        pattern: String,
        fills: BTreeMap<String, KnotExpr>,
    },
    ConnectedSum {
        children: Vec<KnotExpr>,
    },
    Mirror {
        child: Box<KnotExpr>,
    },
}

impl KnotExpr {
    pub fn base(name: &str) -> Self {
        KnotExpr::Base { name: name.into() }
    }

    pub fn infect(pattern: &str, fills: &[(&str, KnotExpr)]) -> Self {
        KnotExpr::Infection {
            pattern: pattern.into(),
            fills: fills.iter().map(|(c, k)| (c.to_string(), k.clone())).collect(),
        }
    }

    pub fn mirror(self) -> Self {
        KnotExpr::Mirror { child: Box::new(self) }
    }
}

impl fmt::Display for KnotExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotExpr::Base { name } => write!(f, "{name}"),
            KnotExpr::Infection { pattern, fills } => {
                write!(f, "{pattern}(")?;
                for (i, (c, k)) in fills.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{c}: {k}")?;
                }
                write!(f, ")")
            }
            KnotExpr::ConnectedSum { children } => {
                let parts: Vec<String> = children.iter().map(|c| c.to_string()).collect();
                write!(f, "({})", parts.join(" # "))
            }
            KnotExpr::Mirror { child } => write!(f, "mirror({child})"),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KnotFact {
    pub name: String,
    pub attributes: Vec<String>,
    #[serde(default)]
    pub note: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PatternFact {
    pub name: String,
    pub curves: BTreeMap<String, Depth>,
    /// Curves which, carrying the unknot, leave a slice knot for any other fills.
    pub slice_when_unknotted: Vec<String>,
    #[serde(default)]
    pub note: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FactBase {
    pub knots: Vec<KnotFact>,
    pub patterns: Vec<PatternFact>,
}

impl Default for FactBase {
    fn default() -> Self {
        FactBase::from_json(DEFAULT_FACTS).expect("bundled fact base parses")
    }
}

impl FactBase {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidArgument(format!("fact base: {e}")))
    }

    pub fn with_knot(mut self, name: &str, attributes: &[&str]) -> Self {
        self.knots.retain(|k| k.name != name);
        self.knots.push(KnotFact {
            name: name.into(),
            attributes: attributes.iter().map(|s| s.to_string()).collect(),
            note: String::new(),
        });
        self
    }

    pub fn knot(&self, name: &str) -> Result<&KnotFact> {
        self.knots.iter().find(|k| k.name == name).ok_or_else(|| Error::UnknownFact(format!("knot {name}")))
    }

    pub fn pattern(&self, name: &str) -> Result<&PatternFact> {
        self.patterns.iter().find(|p| p.name == name).ok_or_else(|| Error::UnknownFact(format!("pattern {name}")))
    }

    fn has(&self, knot: &str, attr: &str) -> bool {
        self.knot(knot).map(|k| k.attributes.iter().any(|a| a == attr)).unwrap_or(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub expr: KnotExpr,
    pub polarity: Polarity,
    pub level: Level,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Rule {
    /// A declared attribute of a base knot.
    Axiom {
        attribute: String,
    },
    /// Unknotting by crossing changes of one sign.
    CrossingChange {
        attribute: String,
    },
    /// Infection along `curve` of a pattern that is slice with that curve unknotted.
    Satellite {
        curve: String,
    },
    Mirror,
    ConnectedSum,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipolarityCertificate {
    pub claim: Claim,
    pub rule: Rule,
    pub premises: Vec<BipolarityCertificate>,
}

impl BipolarityCertificate {
    pub fn node_count(&self) -> usize {
        1 + self.premises.iter().map(|p| p.node_count()).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.premises.iter().map(|p| p.depth()).max().unwrap_or(0)
    }
}

fn leaf(expr: &KnotExpr, polarity: Polarity, level: Level, rule: Rule) -> BipolarityCertificate {
    BipolarityCertificate { claim: Claim { expr: expr.clone(), polarity, level }, rule, premises: vec![] }
}

/// Level-0 certificate for a base knot from its declared attributes.
pub fn rule_crossing_change(facts: &FactBase, name: &str, polarity: Polarity) -> Result<BipolarityCertificate> {
    let attr = match polarity {
        Polarity::Positive => UNKNOTS_POSITIVE,
        Polarity::Negative => UNKNOTS_NEGATIVE,
    };
    facts.knot(name)?;
    if !facts.has(name, attr) {
        return Err(Error::Derivation(format!("{name} lacks attribute {attr:?}")));
    }
    Ok(leaf(&KnotExpr::base(name), polarity, Level::Finite(0), Rule::CrossingChange { attribute: attr.into() }))
}

/// Certificate from a declared `r-negative` / `r-positive` attribute (largest `r`), or from sliceness at every level.
pub fn rule_axiom(facts: &FactBase, name: &str, polarity: Polarity) -> Result<BipolarityCertificate> {
    let expr = KnotExpr::base(name);
    facts.knot(name)?;
    if facts.has(name, SLICE) {
        return Ok(leaf(&expr, polarity, Level::All, Rule::Axiom { attribute: SLICE.into() }));
    }
    let suffix = match polarity {
        Polarity::Negative => "-negative",
        Polarity::Positive => "-positive",
    };
    let best = facts
        .knot(name)?
        .attributes
        .iter()
        .filter_map(|a| a.strip_suffix(suffix)?.parse::<u32>().ok().map(|r| (r, a)))
        .max_by_key(|(r, _)| *r);
    if let Some((r, attr)) = best {
        return Ok(leaf(&expr, polarity, Level::Finite(r), Rule::Axiom { attribute: attr.clone() }));
    }
    Err(Error::Derivation(format!("no axiom gives {name} polarity {polarity:?}")))
}

/// `P(η, J)` from a certificate for `J`; the level rises by the depth of `η`.
pub fn rule_satellite(
    facts: &FactBase,
    pattern: &str,
    fills: &BTreeMap<String, KnotExpr>,
    curve: &str,
    companion: BipolarityCertificate,
) -> Result<BipolarityCertificate> {
    let pf = facts.pattern(pattern)?;
    let depth = *pf.curves.get(curve).ok_or_else(|| Error::UnknownFact(format!("curve {curve} of {pattern}")))?;
    if !pf.slice_when_unknotted.iter().any(|c| c == curve) {
        return Err(Error::Derivation(format!("{pattern} with {curve} unknotted is not declared slice")));
    }
    if let Some(c) = fills.keys().find(|c| !pf.curves.contains_key(*c)) {
        return Err(Error::UnknownFact(format!("curve {c} of {pattern}")));
    }
    let unknot = KnotExpr::base("U");
    if fills.get(curve).unwrap_or(&unknot) != &companion.claim.expr {
        return Err(Error::Derivation(format!("companion does not fill {curve}")));
    }
    let expr = KnotExpr::Infection { pattern: pattern.into(), fills: fills.clone() };
    let claim = Claim { expr, polarity: companion.claim.polarity, level: companion.claim.level.raise(depth) };
    Ok(BipolarityCertificate { claim, rule: Rule::Satellite { curve: curve.into() }, premises: vec![companion] })
}

pub fn rule_mirror(inner: BipolarityCertificate) -> BipolarityCertificate {
    let claim = Claim {
        expr: inner.claim.expr.clone().mirror(),
        polarity: inner.claim.polarity.flip(),
        level: inner.claim.level,
    };
    BipolarityCertificate { claim, rule: Rule::Mirror, premises: vec![inner] }
}

pub fn rule_connected_sum(parts: Vec<BipolarityCertificate>) -> Result<BipolarityCertificate> {
    let first = parts.first().ok_or_else(|| Error::Derivation("empty connected sum".into()))?;
    let polarity = first.claim.polarity;
    if parts.iter().any(|p| p.claim.polarity != polarity) {
        return Err(Error::Derivation("summands certified with different polarities".into()));
    }
    let level = parts.iter().map(|p| p.claim.level).min().expect("nonempty");
    let expr = KnotExpr::ConnectedSum { children: parts.iter().map(|p| p.claim.expr.clone()).collect() };
    Ok(BipolarityCertificate { claim: Claim { expr, polarity, level }, rule: Rule::ConnectedSum, premises: parts })
}

/// The best certificate the rules give for `expr` with the given polarity.
pub fn certify(facts: &FactBase, expr: &KnotExpr, polarity: Polarity) -> Result<BipolarityCertificate> {
    match expr {
        KnotExpr::Base { name } => {
            let mut found: Vec<BipolarityCertificate> = Vec::new();
            let mut errs = Vec::new();
            for attempt in [rule_axiom(facts, name, polarity), rule_crossing_change(facts, name, polarity)] {
                match attempt {
                    Ok(c) => found.push(c),
                    Err(e @ Error::UnknownFact(_)) => return Err(e),
                    Err(e) => errs.push(e.to_string()),
                }
            }
            found.into_iter().max_by_key(|c| c.claim.level).ok_or_else(|| Error::Derivation(errs.join("; ")))
        }
        KnotExpr::Infection { pattern, fills } => {
            let pf = facts.pattern(pattern)?;
            let mut best: Option<BipolarityCertificate> = None;
            let mut errs = Vec::new();
            for curve in pf.curves.keys() {
                let companion = fills.get(curve).cloned().unwrap_or_else(|| KnotExpr::base("U"));
                let attempt =
                    certify(facts, &companion, polarity).and_then(|c| rule_satellite(facts, pattern, fills, curve, c));
                match attempt {
                    Ok(c) if best.as_ref().is_none_or(|b| c.claim.level > b.claim.level) => best = Some(c),
                    Ok(_) => {}
                    Err(e) => errs.push(e.to_string()),
                }
            }
            best.ok_or_else(|| Error::Derivation(format!("{expr}: {}", errs.join("; "))))
        }
        KnotExpr::Mirror { child } => certify(facts, child, polarity.flip()).map(rule_mirror),
        KnotExpr::ConnectedSum { children } => {
            let parts = children.iter().map(|c| certify(facts, c, polarity)).collect::<Result<Vec<_>>>()?;
            rule_connected_sum(parts)
        }
    }
}

/// Replay a certificate through the rules; returns the claim it proves.
pub fn check_certificate(facts: &FactBase, cert: &BipolarityCertificate) -> Result<Claim> {
    let claim = &cert.claim;
    let rebuilt = match (&cert.rule, &claim.expr) {
        (Rule::Axiom { attribute }, KnotExpr::Base { name }) => {
            let c = rule_axiom(facts, name, claim.polarity)?;
            if !matches!(&c.rule, Rule::Axiom { attribute: a } if a == attribute) {
                return Err(Error::Derivation(format!("axiom {attribute:?} does not apply to {name}")));
            }
            c
        }
        (Rule::CrossingChange { .. }, KnotExpr::Base { name }) => rule_crossing_change(facts, name, claim.polarity)?,
        (Rule::Satellite { curve }, KnotExpr::Infection { pattern, fills }) => {
            let [premise] = cert.premises.as_slice() else {
                return Err(Error::Derivation("satellite needs one premise".into()));
            };
            let inner = check_certificate(facts, premise)?;
            let mut p = premise.clone();
            p.claim = inner;
            rule_satellite(facts, pattern, fills, curve, p)?
        }
        (Rule::Mirror, KnotExpr::Mirror { .. }) => {
            let [premise] = cert.premises.as_slice() else {
                return Err(Error::Derivation("mirror needs one premise".into()));
            };
            check_certificate(facts, premise)?;
            rule_mirror(premise.clone())
        }
        (Rule::ConnectedSum, KnotExpr::ConnectedSum { .. }) => {
            for p in &cert.premises {
                check_certificate(facts, p)?;
            }
            rule_connected_sum(cert.premises.clone())?
        }
        (rule, expr) => return Err(Error::Derivation(format!("rule {rule:?} does not apply to {expr}"))),
    };
    if rebuilt.claim != *claim {
        return Err(Error::Derivation(format!(
            "claimed level {} {:?} for {}, rules give {} {:?}",
            claim.level, claim.polarity, claim.expr, rebuilt.claim.level, rebuilt.claim.polarity
        )));
    }
    Ok(rebuilt.claim)
}

/// Name of the seed knot for index `i`.
pub fn seed_name(i: usize) -> String {
    format!("J{i}_0")
}

/// `J^i_k`: `k` stevedore infections on the seed.
pub fn stevedore_tower(i: usize, k: u32) -> KnotExpr {
    (0..k).fold(KnotExpr::base(&seed_name(i)), |acc, _| KnotExpr::infect("stevedore", &[("eta", acc)]))
}

/// `D`: the Whitehead double of the right-handed trefoil.
pub fn whitehead_double() -> KnotExpr {
    KnotExpr::infect("whitehead", &[("eta", KnotExpr::base("T"))])
}

/// `K_i = R(J^i_{n−1}, D)`.
pub fn example_knot(n: u32, i: usize) -> KnotExpr {
    KnotExpr::infect("R", &[("alpha_J", stevedore_tower(i, n - 1)), ("alpha_D", whitehead_double())])
}

/// The bundled facts plus a 0-negative seed for index `i`.
pub fn example_facts(i: usize) -> FactBase {
    FactBase::default().with_knot(&seed_name(i), &[ZERO_NEGATIVE])
}

#[derive(Clone, Debug, Serialize)]
pub struct ExampleCertificates {
    pub negative: BipolarityCertificate,
    pub positive: BipolarityCertificate,
}

/// Negativity at level `n` and positivity at every level for `K_i`.
pub fn certify_example_knots(n: u32, i: usize) -> Result<ExampleCertificates> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("level must be at least 2, got {n}")));
    }
    let facts = example_facts(i);
    let k = example_knot(n, i);
    let negative = certify(&facts, &k, Polarity::Negative)?;
    let positive = certify(&facts, &k, Polarity::Positive)?;
    Ok(ExampleCertificates { negative, positive })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_chain_shapes() {
        for n in 2..=6 {
            let c = certify_example_knots(n, 1).unwrap();
            assert_eq!(c.negative.claim.level, Level::Finite(n));
            assert_eq!(c.negative.node_count(), n as usize + 1);
            assert_eq!(c.positive.claim.level, Level::All);
            assert_eq!(c.positive.node_count(), 3);
            let facts = example_facts(1);
            assert_eq!(check_certificate(&facts, &c.negative).unwrap(), c.negative.claim);
            assert_eq!(check_certificate(&facts, &c.positive).unwrap(), c.positive.claim);
        }
        assert!(certify_example_knots(1, 1).is_err());
    }

    #[test]
    fn crossing_change_and_mirror() {
        let facts = FactBase::default();
        let t = rule_crossing_change(&facts, "T", Polarity::Positive).unwrap();
        assert_eq!(t.claim.level, Level::Finite(0));
        assert!(rule_crossing_change(&facts, "T", Polarity::Negative).is_err());
        let m = certify(&facts, &KnotExpr::base("T").mirror(), Polarity::Negative).unwrap();
        assert_eq!(m.claim.level, Level::Finite(0));
        assert_eq!(check_certificate(&facts, &m).unwrap().polarity, Polarity::Negative);
        let u = certify(&facts, &KnotExpr::base("U"), Polarity::Negative).unwrap();
        assert!(u.claim.level.covers(Level::Finite(0)));
    }

    #[test]
    fn tampered_certificates_fail() {
        let facts = example_facts(1);
        let mut c = certify_example_knots(3, 1).unwrap().negative;
        c.claim.level = Level::Finite(4);
        assert!(check_certificate(&facts, &c).is_err());
        let c = certify_example_knots(3, 1).unwrap().negative;
        assert!(check_certificate(&FactBase::default(), &c).is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = certify_example_knots(2, 7).unwrap();
        let s = serde_json::to_string(&c.positive).unwrap();
        let back: BipolarityCertificate = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c.positive);
        let k: KnotExpr = serde_json::from_str(r#"{"kind":"base","name":"U"}"#).unwrap();
        assert_eq!(k, KnotExpr::base("U"));
    }
}
