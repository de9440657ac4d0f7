use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use super::{scc, Quiver};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::numjson::{parse_rational, rational_string};

/// Upper bound on the order search when no larger hint is given.
pub const ORDER_SEARCH_CAP: u32 = 64;

/// A path, arrows listed in written order (the rightmost arrow is traversed first).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn vertex(v: usize) -> Self {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn arrow(q: &Quiver, a: usize) -> Self {
        let arrow = &q.arrows()[a];
        Path { source: arrow.src, target: arrow.dst, arrows: vec![a] }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_vertex(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self · other`: follow `other`, then `self`.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if self.source != other.target {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path { source: other.source, target: self.target, arrows })
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.is_vertex() {
            format!("p_{}", q.vertices()[self.source])
        } else {
            self.arrows.iter().map(|&a| q.arrows()[a].name.as_str()).collect::<Vec<_>>().join("*")
        }
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.len(), self.source, self.target, &self.arrows)
            .cmp(&(other.len(), other.source, other.target, &other.arrows))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All paths of length `0..=maxlen`, grouped by length and sorted.
pub fn enumerate_paths(q: &Quiver, maxlen: usize) -> Vec<Vec<Path>> {
    let n = q.vertex_count();
    let per_source: Vec<Vec<Vec<Path>>> = (0..n)
        .into_par_iter()
        .map(|v| {
            let mut levels = vec![vec![Path::vertex(v)]];
            for _ in 0..maxlen {
                let next: Vec<Path> = levels
                    .last()
                    .unwrap()
                    .iter()
                    .flat_map(|p| {
                        q.arrows()
                            .iter()
                            .enumerate()
                            .filter(move |(_, a)| a.src == p.target)
                            .map(move |(i, _)| Path::arrow(q, i).compose(p).unwrap())
                    })
                    .collect();
                levels.push(next);
            }
            levels
        })
        .collect();
    (0..=maxlen)
        .map(|l| {
            let mut level: Vec<Path> = per_source.iter().flat_map(|s| s[l].iter().cloned()).collect();
            level.sort();
            level
        })
        .collect()
}

/// A rational linear combination of paths.
#[derive(Debug, Clone)]
pub struct PathElement {
    quiver: Arc<Quiver>,
    terms: BTreeMap<Path, BigRational>,
}

impl PartialEq for PathElement {
    fn eq(&self, other: &Self) -> bool {
        same_quiver(&self.quiver, &other.quiver) && self.terms == other.terms
    }
}

fn same_quiver(a: &Arc<Quiver>, b: &Arc<Quiver>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PathElement {
    pub fn zero(q: &Arc<Quiver>) -> Self {
        PathElement { quiver: q.clone(), terms: BTreeMap::new() }
    }

    /// `Σ_v p_v`.
    pub fn unit(q: &Arc<Quiver>) -> Self {
        let terms = (0..q.vertex_count()).map(|v| (Path::vertex(v), BigRational::one())).collect();
        PathElement { quiver: q.clone(), terms }
    }

    pub fn from_path(q: &Arc<Quiver>, p: Path) -> Self {
        Self::from_terms(q, [(p, BigRational::one())])
    }

    pub fn vertex(q: &Arc<Quiver>, v: usize) -> Self {
        Self::from_path(q, Path::vertex(v))
    }

    pub fn arrow(q: &Arc<Quiver>, a: usize) -> Self {
        Self::from_path(q, Path::arrow(q, a))
    }

    pub fn from_terms(q: &Arc<Quiver>, terms: impl IntoIterator<Item = (Path, BigRational)>) -> Self {
        let mut out = Self::zero(q);
        for (p, c) in terms {
            out.add_term(p, c);
        }
        out
    }

    fn add_term(&mut self, p: Path, c: BigRational) {
        let entry = self.terms.entry(p.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn terms(&self) -> &BTreeMap<Path, BigRational> {
        &self.terms
    }

    pub fn coefficient(&self, p: &Path) -> BigRational {
        self.terms.get(p).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if same_quiver(&self.quiver, &other.quiver) {
            Ok(())
        } else {
            Err(Error::QuiverMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.quiver);
        }
        let terms = self.terms.iter().map(|(p, x)| (p.clone(), x * c)).collect();
        PathElement { quiver: self.quiver.clone(), terms }
    }

    /// Bilinear extension of path composition.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(&self.quiver);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some(ab) = a.compose(b) {
                    out.add_term(ab, x * y);
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for PathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let name = p.display(&self.quiver);
            let mag = c.abs();
            let sign = match (i, c.is_negative()) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            if mag.is_one() {
                write!(f, "{sign}{name}")?;
            } else {
                write!(f, "{sign}{}*{name}", rational_string(&mag))?;
            }
        }
        Ok(())
    }
}

/// Images of the generators: each vertex goes to a vertex, each arrow to a path element.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorImages {
    pub vertices: Vec<usize>,
    pub arrows: Vec<PathElement>,
}

impl GeneratorImages {
    pub fn identity(q: &Arc<Quiver>) -> Self {
        GeneratorImages {
            vertices: (0..q.vertex_count()).collect(),
            arrows: (0..q.arrows().len()).map(|a| PathElement::arrow(q, a)).collect(),
        }
    }

    fn image_of_path(&self, q: &Arc<Quiver>, p: &Path) -> Result<PathElement> {
        if p.is_vertex() {
            return Ok(PathElement::vertex(q, self.vertices[p.source]));
        }
        let mut out = self.arrows[p.arrows[0]].clone();
        for &a in &p.arrows[1..] {
            out = out.multiply(&self.arrows[a])?;
        }
        Ok(out)
    }

    pub fn apply(&self, x: &PathElement) -> Result<PathElement> {
        let q = x.quiver().clone();
        let mut out = PathElement::zero(&q);
        for (p, c) in x.terms() {
            out = out.try_add(&self.image_of_path(&q, p)?.scale(c))?;
        }
        Ok(out)
    }
}

fn parse_coefficient(v: &Value) -> Result<BigRational> {
    let bad = || Error::Schema(format!("bad coefficient {v}"));
    match v {
        Value::Number(n) => n.as_i64().map(|i| BigRational::from_integer(i.into())).ok_or_else(bad),
        Value::String(s) => parse_rational(s).ok_or_else(bad),
        _ => Err(bad()),
    }
}

/// Parse `{"vertices": {name: name}, "edges": {name: [[coeff, [generator, ...]], ...]}}`.
///
/// Generators listed in a term are multiplied in written order. Omitted
/// vertices and arrows map to themselves.
pub fn parse_map_document(q: &Arc<Quiver>, json: &str) -> Result<GeneratorImages> {
    let doc: Value = serde_json::from_str(json).map_err(|e| Error::Schema(e.to_string()))?;
    let obj = doc.as_object().ok_or_else(|| Error::Schema("map file must be an object".into()))?;
    if let Some(key) = obj.keys().find(|k| *k != "vertices" && *k != "edges") {
        return Err(Error::Schema(format!("unexpected key `{key}`")));
    }
    let mut images = GeneratorImages::identity(q);
    let vertex = |name: &str| {
        q.vertex_index(name).ok_or_else(|| Error::Schema(format!("unknown vertex `{name}`")))
    };

    if let Some(vs) = obj.get("vertices") {
        let vs = vs.as_object().ok_or_else(|| Error::Schema("`vertices` must be an object".into()))?;
        for (from, to) in vs {
            let to = to.as_str().ok_or_else(|| Error::Schema(format!("image of `{from}` must be a name")))?;
            images.vertices[vertex(from)?] = vertex(to)?;
        }
    }

    let generator = |name: &str| -> Result<PathElement> {
        if let Some(a) = q.arrow_index(name) {
            Ok(PathElement::arrow(q, a))
        } else {
            Ok(PathElement::vertex(q, vertex(name)?))
        }
    };

    if let Some(es) = obj.get("edges") {
        let es = es.as_object().ok_or_else(|| Error::Schema("`edges` must be an object".into()))?;
        for (name, terms) in es {
            let a = q.arrow_index(name).ok_or_else(|| Error::Schema(format!("unknown arrow `{name}`")))?;
            let terms = terms.as_array().ok_or_else(|| Error::Schema(format!("image of `{name}` must be a list")))?;
            let mut image = PathElement::zero(q);
            for term in terms {
                let pair = term.as_array().filter(|t| t.len() == 2).ok_or_else(|| {
                    Error::Schema(format!("term {term} in image of `{name}` must be [coeff, [path]]"))
                })?;
                let coeff = parse_coefficient(&pair[0])?;
                let word = pair[1]
                    .as_array()
                    .filter(|w| !w.is_empty())
                    .ok_or_else(|| Error::Schema(format!("empty or malformed path in image of `{name}`")))?;
                let mut path = PathElement::unit(q);
                for g in word {
                    let g = g.as_str().ok_or_else(|| Error::Schema(format!("bad generator {g}")))?;
                    path = path.multiply(&generator(g)?)?;
                }
                if path.is_zero() {
                    return Err(Error::Schema(format!("path {} is not composable", pair[1])));
                }
                image = image.try_add(&path.scale(&coeff))?;
            }
            images.arrows[a] = image;
        }
    }
    Ok(images)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutomorphismReport {
    pub dimension: usize,
    pub multiplicative: bool,
    pub unit_preserved: bool,
    pub invertible: bool,
    pub automorphism: bool,
    /// Smallest `k ≥ 1` with `φ^k = id`, searched up to the cap.
    pub order: Option<u32>,
    pub order_hint: Option<u32>,
    pub order_matches: Option<bool>,
    pub failures: Vec<String>,
}

impl AutomorphismReport {
    pub fn passed(&self) -> bool {
        self.automorphism && self.order_matches != Some(false)
    }
}

fn coordinates(x: &PathElement, index: &HashMap<&Path, usize>, dim: usize) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); dim];
    for (p, c) in x.terms() {
        v[index[p]] = c.clone();
    }
    v
}

/// Check that generator images extend to an algebra automorphism of `kQ`.
pub fn check_automorphism(
    q: &Arc<Quiver>,
    images: &GeneratorImages,
    order_hint: Option<u32>,
) -> Result<AutomorphismReport> {
    if !scc(q).is_acyclic() {
        return Err(Error::NotAcyclic);
    }
    let n = q.vertex_count();
    if images.vertices.len() != n || images.arrows.len() != q.arrows().len() {
        return Err(Error::DimensionMismatch("generator images do not match the quiver".into()));
    }
    if let Some(&bad) = images.vertices.iter().find(|&&w| w >= n) {
        return Err(Error::IndexOutOfRange { what: "vertex image", index: bad, size: n });
    }
    for (a, arrow) in q.arrows().iter().enumerate() {
        let image = &images.arrows[a];
        if !same_quiver(image.quiver(), q) {
            return Err(Error::QuiverMismatch);
        }
        let (s, t) = (images.vertices[arrow.src], images.vertices[arrow.dst]);
        if let Some(p) = image.terms().keys().find(|p| p.source != s || p.target != t) {
            return Err(Error::EndpointMismatch {
                generator: arrow.name.clone(),
                detail: format!(
                    "{} runs {} -> {}, expected {} -> {}",
                    p.display(q),
                    q.vertices()[p.source],
                    q.vertices()[p.target],
                    q.vertices()[s],
                    q.vertices()[t]
                ),
            });
        }
    }

    let basis: Vec<Path> = enumerate_paths(q, n.saturating_sub(1)).into_iter().flatten().collect();
    let dim = basis.len();
    let index: HashMap<&Path, usize> = basis.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let phi: Vec<PathElement> =
        basis.iter().map(|p| images.image_of_path(q, p)).collect::<Result<_>>()?;

    let mut failures: Vec<String> = (0..dim)
        .into_par_iter()
        .flat_map_iter(|i| {
            let (basis, phi, index) = (&basis, &phi, &index);
            (0..dim).filter_map(move |j| {
                let lhs = match basis[i].compose(&basis[j]) {
                    Some(p) => phi[index[&p]].clone(),
                    None => PathElement::zero(q),
                };
                let rhs = phi[i].multiply(&phi[j]).ok()?;
                (lhs != rhs).then(|| {
                    format!("φ({}·{}) = {lhs} but φ({})·φ({}) = {rhs}",
                        basis[i].display(q), basis[j].display(q),
                        basis[i].display(q), basis[j].display(q))
                })
            })
        })
        .collect();
    let multiplicative = failures.is_empty();

    let unit = PathElement::unit(q);
    let unit_image = images.apply(&unit)?;
    let unit_preserved = unit_image == unit;
    if !unit_preserved {
        failures.push(format!("φ(1) = {unit_image}"));
    }

    // column k holds the coordinates of φ(basis[k])
    let columns: Vec<Vec<BigRational>> = phi.iter().map(|x| coordinates(x, &index, dim)).collect();
    let matrix: Matrix<BigRational> =
        (0..dim).map(|r| (0..dim).map(|c| columns[c][r].clone()).collect()).collect();
    let invertible = linalg::rank(&matrix) == dim;
    if !invertible {
        failures.push("φ is singular on the path basis".into());
    }

    let automorphism = multiplicative && unit_preserved && invertible;
    let order = if invertible {
        let cap = order_hint.map_or(ORDER_SEARCH_CAP, |h| h.max(ORDER_SEARCH_CAP));
        let identity = linalg::identity_like(dim, &BigRational::zero());
        let mut power = matrix.clone();
        (1..=cap).find(|_| {
            if power == identity {
                return true;
            }
            power = linalg::mat_mul(&matrix, &power);
            false
        })
    } else {
        None
    };
    failures.truncate(8);
    Ok(AutomorphismReport {
        dimension: dim,
        multiplicative,
        unit_preserved,
        invertible,
        automorphism,
        order,
        order_hint,
        order_matches: order_hint.map(|h| order == Some(h)),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::load_quiver;

    const TRIANGLE: &str = r#"{
        "vertices": ["a", "b", "c"],
        "edges": [
            {"src": "a", "dst": "b", "name": "alpha"},
            {"src": "b", "dst": "c", "name": "beta"},
            {"src": "a", "dst": "c", "name": "gamma"}
        ]
    }"#;

    fn triangle() -> Arc<Quiver> {
        Arc::new(load_quiver(TRIANGLE).unwrap())
    }

    fn two_cycle() -> Arc<Quiver> {
        Arc::new(
            load_quiver(r#"{"vertices": ["a","b"], "edges": [
                {"src":"a","dst":"b","name":"alpha"}, {"src":"b","dst":"a","name":"beta"}]}"#)
            .unwrap(),
        )
    }

    #[test]
    fn beta_alpha_composes_and_alpha_alpha_vanishes() {
        let q = two_cycle();
        let (a, b) = (PathElement::arrow(&q, 0), PathElement::arrow(&q, 1));
        let ba = b.multiply(&a).unwrap();
        assert_eq!(ba.to_string(), "beta*alpha");
        let p = ba.terms().keys().next().unwrap();
        assert_eq!((p.source, p.target), (0, 0));
        assert!(a.multiply(&a).unwrap().is_zero());
    }

    #[test]
    fn unit_is_two_sided() {
        let q = triangle();
        let x = PathElement::from_terms(&q, [
            (Path::arrow(&q, 2), BigRational::from_integer(3.into())),
            (Path::vertex(1), BigRational::new(1.into(), 2.into())),
        ]);
        let one = PathElement::unit(&q);
        assert_eq!(one.multiply(&x).unwrap(), x);
        assert_eq!(x.multiply(&one).unwrap(), x);
    }

    #[test]
    fn triangle_has_seven_paths() {
        let q = triangle();
        let levels = enumerate_paths(&q, 2);
        let names: Vec<String> = levels.iter().flatten().map(|p| p.display(&q)).collect();
        assert_eq!(names, ["p_a", "p_b", "p_c", "alpha", "gamma", "beta", "beta*alpha"]);
        assert_eq!(enumerate_paths(&q, 0)[0].len(), 3);
    }

    #[test]
    fn two_cycle_path_counts() {
        let counts: Vec<usize> = enumerate_paths(&two_cycle(), 3).iter().map(Vec::len).collect();
        assert_eq!(counts, [2, 2, 2, 2]);
    }

    #[test]
    fn triangle_automorphism_has_order_two() {
        let q = triangle();
        let map = r#"{"edges": {"gamma": [[-1, ["gamma"]], [-1, ["beta", "alpha"]]]}}"#;
        let images = parse_map_document(&q, map).unwrap();
        assert_eq!(images.arrows[2].to_string(), "-gamma - beta*alpha");
        let report = check_automorphism(&q, &images, Some(2)).unwrap();
        assert_eq!(report.dimension, 7);
        assert!(report.automorphism, "{report:?}");
        assert_eq!(report.order, Some(2));
        assert!(report.passed());
    }

    #[test]
    fn identity_has_order_one() {
        let q = triangle();
        let report = check_automorphism(&q, &GeneratorImages::identity(&q), None).unwrap();
        assert!(report.automorphism);
        assert_eq!(report.order, Some(1));
    }

    #[test]
    fn endpoint_mismatch_is_an_error() {
        let q = triangle();
        let images = parse_map_document(&q, r#"{"edges": {"gamma": [[1, ["alpha"]]]}}"#).unwrap();
        assert!(matches!(check_automorphism(&q, &images, None), Err(Error::EndpointMismatch { .. })));
    }

    #[test]
    fn killing_an_arrow_is_not_invertible() {
        let q = triangle();
        let images = parse_map_document(&q, r#"{"edges": {"alpha": []}}"#).unwrap();
        let report = check_automorphism(&q, &images, None).unwrap();
        assert!(report.multiplicative);
        assert!(!report.invertible);
        assert!(!report.automorphism);
    }

    #[test]
    fn cyclic_quiver_is_rejected() {
        let q = two_cycle();
        assert!(matches!(
            check_automorphism(&q, &GeneratorImages::identity(&q), None),
            Err(Error::NotAcyclic)
        ));
    }

    #[test]
    fn cross_quiver_product_fails() {
        let (a, b) = (PathElement::unit(&triangle()), PathElement::unit(&two_cycle()));
        assert!(matches!(a.multiply(&b), Err(Error::QuiverMismatch)));
    }

    #[test]
    fn bad_map_files() {
        let q = triangle();
        assert!(parse_map_document(&q, r#"{"edges": {"delta": []}}"#).is_err());
        assert!(parse_map_document(&q, r#"{"edges": {"gamma": [[1, ["alpha", "beta"]]]}}"#).is_err());
        assert!(parse_map_document(&q, r#"{"edges": {"gamma": [[1, []]]}}"#).is_err());
        assert!(parse_map_document(&q, r#"{"vertices": {"a": "z"}}"#).is_err());
        assert!(parse_map_document(&q, r#"{"extra": 1}"#).is_err());
    }
}
