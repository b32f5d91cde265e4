//! JSON documents for complexes, iterated complexes, Dolbeault algebras, covers and Green
//! objects. Every scalar is a string: rationals as `p/q`, Gaussian rationals as `a/b+c/d i`.

use crate::complex::{Complex, ComplexMap};
use crate::deligne::DeligneAlgebra;
use crate::dolbeault::{jet, nilpotent, torus, Bigraded, DolbeaultAlgebra, GaussianScalar, SparseCol, Table};
use crate::error::{Error, Result};
use crate::green::{Cover, CoverModel, GreenObject, Partition, Splitting, Support};
use crate::iterated::{IteratedComplex, Mode, MultiDegree};
use crate::linalg::{fmt_q, parse_q, Matrix, Q};
use crate::random::rng;
use crate::truncated::TruncatedClass;
use crate::verify::check_chain_map_located;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

fn parse_scalar(s: &str, at: impl FnOnce() -> String) -> Result<Q> {
    parse_q(s).ok_or_else(|| Error::input(format!("not a rational `{s}` at {}", at())))
}

fn parse_gauss(s: &str, at: impl FnOnce() -> String) -> Result<GaussianScalar> {
    GaussianScalar::parse(s).ok_or_else(|| Error::input(format!("not a Gaussian rational `{s}` at {}", at())))
}

pub fn vec_to_strings(v: &[Q]) -> Vec<String> {
    v.iter().map(fmt_q).collect()
}

pub fn vec_from_strings(v: &[String], at: &str) -> Result<Vec<Q>> {
    v.iter().enumerate().map(|(i, s)| parse_scalar(s, || format!("{at}[{i}]"))).collect()
}

fn matrix_to_rows(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| vec_to_strings(m.row(r))).collect()
}

fn matrix_from_rows(rows: &[Vec<String>], shape: (usize, usize), at: &str) -> Result<Matrix> {
    if rows.len() != shape.0 || rows.iter().any(|r| r.len() != shape.1) {
        return Err(Error::input(format!("{at}: expected a {}×{} matrix", shape.0, shape.1)));
    }
    let mut data = Vec::with_capacity(shape.0 * shape.1);
    for (i, row) in rows.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            data.push(parse_scalar(s, || format!("{at}[{i}][{j}]"))?);
        }
    }
    Ok(Matrix::from_rows(shape.0, shape.1, data))
}

/// `{"degrees": [lo, hi], "dims": {"n": d}, "diff": {"n": rows of d_n}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub degrees: [i32; 2],
    pub dims: BTreeMap<String, usize>,
    pub diff: BTreeMap<String, Vec<Vec<String>>>,
}

impl ComplexDoc {
    pub fn from_complex(c: &Complex) -> Self {
        if c.is_zero() {
            return ComplexDoc { degrees: [0, -1], dims: BTreeMap::new(), diff: BTreeMap::new() };
        }
        let (lo, hi) = (c.lo(), c.hi());
        let dims = (lo..=hi).map(|n| (n.to_string(), c.dim(n))).collect();
        let diff = (lo..hi).map(|n| (n.to_string(), matrix_to_rows(&c.diff(n)))).collect();
        ComplexDoc { degrees: [lo, hi], dims, diff }
    }

    pub fn to_complex(&self) -> Result<Complex> {
        let [lo, hi] = self.degrees;
        if hi < lo {
            return Ok(Complex::zero());
        }
        let dim = |n: i32| -> Result<usize> {
            self.dims.get(&n.to_string()).copied().ok_or_else(|| Error::input(format!("dims: missing degree {n}")))
        };
        let dims = (lo..=hi).map(dim).collect::<Result<Vec<_>>>()?;
        let mut diffs = Vec::new();
        for n in lo..hi {
            let (src, tgt) = (dims[(n - lo) as usize], dims[(n - lo + 1) as usize]);
            let m = match self.diff.get(&n.to_string()) {
                Some(rows) => matrix_from_rows(rows, (tgt, src), &format!("diff[{n}]"))?,
                None if src == 0 || tgt == 0 => Matrix::zeros(tgt, src),
                None => return Err(Error::input(format!("diff: missing degree {n}"))),
            };
            diffs.push(m);
        }
        Complex::new(lo, dims, diffs)
    }
}

/// A chain map `{"source": complex, "target": complex, "maps": {"n": rows}}`; missing degrees are zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDoc {
    pub source: ComplexDoc,
    pub target: ComplexDoc,
    pub maps: BTreeMap<String, Vec<Vec<String>>>,
}

impl MapDoc {
    pub fn from_map(f: &ComplexMap) -> Self {
        MapDoc {
            source: ComplexDoc::from_complex(f.source()),
            target: ComplexDoc::from_complex(f.target()),
            maps: f.degrees().map(|n| (n.to_string(), matrix_to_rows(&f.map(n)))).collect(),
        }
    }

    /// Parses and checks the chain condition, naming the first offending basis element.
    pub fn to_map(&self) -> Result<ComplexMap> {
        let (s, t) = (self.source.to_complex()?, self.target.to_complex()?);
        let mut maps = BTreeMap::new();
        for (k, rows) in &self.maps {
            let n: i32 = k.parse().map_err(|_| Error::input(format!("maps: bad degree `{k}`")))?;
            maps.insert(n, matrix_from_rows(rows, (t.dim(n), s.dim(n)), &format!("maps[{n}]"))?);
        }
        let f = ComplexMap::new_unchecked(s, t, maps)?;
        check_chain_map_located(&f, "d∘f = f∘d")?;
        Ok(f)
    }
}

fn key(m: &[i32]) -> String {
    m.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn parse_key(s: &str, arity: usize) -> Result<MultiDegree> {
    let v: Vec<i32> =
        s.split(',').map(|x| x.trim().parse().map_err(|_| Error::input(format!("bad multidegree `{s}`")))).collect::<Result<_>>()?;
    if v.len() != arity {
        return Err(Error::input(format!("multidegree `{s}` does not have arity {arity}")));
    }
    Ok(v)
}

/// Iterated complex: `{"arity", "mode": "iterated"|"k-complex", "dims": {"p,q": d},
/// "diff": [{"p,q": rows}, ...]}` with one family per slot.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IteratedDoc {
    pub arity: usize,
    pub mode: String,
    pub dims: BTreeMap<String, usize>,
    pub diff: Vec<BTreeMap<String, Vec<Vec<String>>>>,
}

impl IteratedDoc {
    pub fn from_iterated(c: &IteratedComplex) -> Self {
        let degs: Vec<MultiDegree> = c.multidegrees().cloned().collect();
        let dims = degs.iter().map(|m| (key(m), c.dim(m))).collect();
        let diff = (0..c.arity())
            .map(|i| {
                degs.iter()
                    .filter_map(|m| {
                        let d = c.diff(i, m);
                        (d.rows() > 0 && d.cols() > 0).then(|| (key(m), matrix_to_rows(&d)))
                    })
                    .collect()
            })
            .collect();
        let mode = match c.mode() {
            Mode::Iterated => "iterated",
            Mode::KComplex => "k-complex",
        };
        IteratedDoc { arity: c.arity(), mode: mode.into(), dims, diff }
    }

    pub fn to_iterated(&self) -> Result<IteratedComplex> {
        let mode = match self.mode.as_str() {
            "iterated" => Mode::Iterated,
            "k-complex" => Mode::KComplex,
            m => return Err(Error::input(format!("mode must be `iterated` or `k-complex`, got `{m}`"))),
        };
        let dims: BTreeMap<MultiDegree, usize> =
            self.dims.iter().map(|(k, d)| Ok((parse_key(k, self.arity)?, *d))).collect::<Result<_>>()?;
        let mut diffs = Vec::new();
        for (i, fam) in self.diff.iter().enumerate() {
            let mut out = BTreeMap::new();
            for (k, rows) in fam {
                let m = parse_key(k, self.arity)?;
                let mut t = m.clone();
                t[i] += 1;
                let shape = (dims.get(&t).copied().unwrap_or(0), dims.get(&m).copied().unwrap_or(0));
                out.insert(m, matrix_from_rows(rows, shape, &format!("diff[{i}][{k}]"))?);
            }
            diffs.push(out);
        }
        IteratedComplex::new(self.arity, mode, dims, diffs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisDoc {
    pub name: String,
    pub bidegree: [i32; 2],
}

/// Entry `(index, scalar)` of a sparse column.
pub type SparseDoc = Vec<(usize, String)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductDoc {
    pub left: usize,
    pub right: usize,
    pub value: SparseDoc,
}

/// Dolbeault algebra: basis with bidegrees, `κ(e_i) = sign·e_j` as `[j, sign]`, sparse columns
/// of `∂` and `∂̄`, and the nonzero products of basis elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DolbeaultDoc {
    pub basis: Vec<BasisDoc>,
    pub unit: usize,
    pub conj: Vec<(usize, i64)>,
    pub del: Vec<SparseDoc>,
    pub delbar: Vec<SparseDoc>,
    pub products: Vec<ProductDoc>,
}

fn sparse_to_doc(c: &SparseCol) -> SparseDoc {
    c.iter().map(|(i, g)| (*i, g.to_string())).collect()
}

fn sparse_from_doc(c: &SparseDoc, dim: usize, at: &str) -> Result<SparseCol> {
    c.iter()
        .enumerate()
        .map(|(k, (i, s))| {
            if *i >= dim {
                return Err(Error::input(format!("{at}[{k}]: index {i} out of range")));
            }
            Ok((*i, parse_gauss(s, || format!("{at}[{k}]"))?))
        })
        .collect()
}

impl DolbeaultDoc {
    pub fn from_algebra(a: &DolbeaultAlgebra) -> Self {
        let s = &a.space;
        DolbeaultDoc {
            basis: (0..s.dim()).map(|i| BasisDoc { name: a.names[i].clone(), bidegree: [s.bideg[i].0, s.bideg[i].1] }).collect(),
            unit: a.unit,
            conj: s.conj.clone(),
            del: s.del.iter().map(sparse_to_doc).collect(),
            delbar: s.delbar.iter().map(sparse_to_doc).collect(),
            products: a.table.iter().map(|((l, r), v)| ProductDoc { left: *l, right: *r, value: sparse_to_doc(v) }).collect(),
        }
    }

    /// Parses and checks every Dolbeault algebra axiom.
    pub fn to_algebra(&self) -> Result<DolbeaultAlgebra> {
        let n = self.basis.len();
        let same_len = |len: usize, what: &str| {
            if len == n {
                Ok(())
            } else {
                Err(Error::input(format!("{what}: expected {n} entries, got {len}")))
            }
        };
        same_len(self.conj.len(), "conj")?;
        same_len(self.del.len(), "del")?;
        same_len(self.delbar.len(), "delbar")?;
        if self.unit >= n {
            return Err(Error::input("unit: index out of range"));
        }
        if let Some((k, _)) = self.conj.iter().enumerate().find(|(_, (j, s))| *j >= n || s.abs() != 1) {
            return Err(Error::input(format!("conj[{k}]: expected [index < {n}, ±1]")));
        }
        let space = Bigraded {
            bideg: self.basis.iter().map(|b| (b.bidegree[0], b.bidegree[1])).collect(),
            conj: self.conj.clone(),
            del: self.del.iter().enumerate().map(|(i, c)| sparse_from_doc(c, n, &format!("del[{i}]"))).collect::<Result<_>>()?,
            delbar: self.delbar.iter().enumerate().map(|(i, c)| sparse_from_doc(c, n, &format!("delbar[{i}]"))).collect::<Result<_>>()?,
        };
        let mut table = Table::new();
        for (k, p) in self.products.iter().enumerate() {
            if p.left >= n || p.right >= n {
                return Err(Error::input(format!("products[{k}]: index out of range")));
            }
            table.insert((p.left, p.right), sparse_from_doc(&p.value, n, &format!("products[{k}]"))?);
        }
        DolbeaultAlgebra::new(space, table, self.unit, self.basis.iter().map(|b| b.name.clone()).collect())
    }
}

/// A shipped algebra by name: `torus:g`, `jet:e`, `nilpotent:seed:g:closed`.
pub fn shipped_algebra(name: &str) -> Result<DolbeaultAlgebra> {
    let parts: Vec<&str> = name.split(':').collect();
    let num = |i: usize| -> Result<u64> {
        parts.get(i).and_then(|s| s.parse().ok()).ok_or_else(|| Error::input(format!("bad algebra name `{name}`")))
    };
    match parts[0] {
        "torus" if parts.len() == 2 && (1..=4).contains(&num(1)?) => Ok(torus(num(1)? as usize)),
        "jet" if parts.len() == 2 && num(1)? <= 2 => Ok(jet(num(1)? as usize)),
        "nilpotent" if parts.len() == 4 && num(3)? <= num(2)? && num(2)? <= 4 => {
            Ok(nilpotent(&mut rng(num(1)?), num(2)? as usize, num(3)? as usize))
        }
        _ => Err(Error::input(format!("unknown algebra `{name}` (expected torus:1..4, jet:0..2 or nilpotent:seed:g:closed with g ≤ 4)"))),
    }
}

/// A fiber algebra given by name or inline.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FiberDoc {
    Shipped(String),
    Inline(Box<DolbeaultDoc>),
}

impl FiberDoc {
    pub fn algebra(&self) -> Result<DolbeaultAlgebra> {
        match self {
            FiberDoc::Shipped(s) => shipped_algebra(s),
            FiberDoc::Inline(d) => d.to_algebra(),
        }
    }
}

/// A finite cover diagram: points, the supports `Y` and `Z`, the fiber algebra, the `σ_YZ`
/// table on all points, and an optional seed for a synthetic section.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverDoc {
    pub fiber: FiberDoc,
    pub points: usize,
    pub y: Vec<usize>,
    pub z: Vec<usize>,
    pub sigma_yz: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub synthetic_section: Option<u64>,
}

/// Everything needed to multiply Green objects on a cover.
pub struct LoadedCover {
    pub model: CoverModel,
    pub cover: Cover,
    pub partition: Partition,
    pub splitting: Splitting,
}

impl CoverDoc {
    pub fn new(fiber: FiberDoc, partition: &Partition, cover: &Cover, synthetic_section: Option<u64>) -> Self {
        CoverDoc {
            fiber,
            points: cover.points,
            y: cover.y.iter().copied().collect(),
            z: cover.z.iter().copied().collect(),
            sigma_yz: vec_to_strings(&partition.sigma_yz),
            synthetic_section,
        }
    }

    pub fn load(&self) -> Result<LoadedCover> {
        let alg = self.fiber.algebra()?;
        let model = CoverModel::new(Arc::new(DeligneAlgebra::new(Arc::new(alg), 2)?), self.points);
        let cover = Cover::new(self.points, self.y.iter().copied().collect(), self.z.iter().copied().collect())?;
        let partition = Partition::new(&cover, vec_from_strings(&self.sigma_yz, "sigma_yz")?)?;
        let splitting = match self.synthetic_section {
            Some(seed) => Splitting::Synthetic(partition.clone(), seed),
            None => Splitting::Partition(partition.clone()),
        };
        Ok(LoadedCover { model, cover, partition, splitting })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDoc {
    pub degree: i32,
    pub a: Vec<String>,
    pub b: Vec<String>,
}

/// A Green object: support, weight, truncated class `(a, b)` and the designated relative class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreenDoc {
    pub support: Vec<usize>,
    pub weight: i32,
    pub class: ClassDoc,
    pub designated: Vec<String>,
}

impl GreenDoc {
    pub fn from_green(g: &GreenObject) -> Self {
        GreenDoc {
            support: g.support.iter().copied().collect(),
            weight: g.weight,
            class: ClassDoc { degree: g.class.degree, a: vec_to_strings(&g.class.a), b: vec_to_strings(&g.class.b) },
            designated: vec_to_strings(&g.designated),
        }
    }

    /// Parses and checks membership in the Green group of the model.
    pub fn to_green(&self, model: &CoverModel) -> Result<GreenObject> {
        let support: Support = self.support.iter().copied().collect();
        let class = TruncatedClass {
            degree: self.class.degree,
            a: vec_from_strings(&self.class.a, "class.a")?,
            b: vec_from_strings(&self.class.b, "class.b")?,
        };
        GreenObject::new(model, support, self.weight, class, vec_from_strings(&self.designated, "designated")?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_morphism;

    #[test]
    fn complex_round_trip() {
        let mut r = rng(5);
        for _ in 0..10 {
            let c = crate::complex::simple_of_map(&random_morphism(&mut r, 3));
            let doc = ComplexDoc::from_complex(&c);
            let text = serde_json::to_string(&doc).unwrap();
            let back: ComplexDoc = serde_json::from_str(&text).unwrap();
            assert_eq!(back.to_complex().unwrap(), c.without_labels());
        }
    }

    #[test]
    fn broken_differential_is_located() {
        let doc: ComplexDoc = serde_json::from_str(r#"{"degrees":[0,1],"dims":{"0":1,"1":1},"diff":{"0":[["x"]]}}"#).unwrap();
        let e = doc.to_complex().unwrap_err().to_string();
        assert!(e.contains("diff[0][0][0]"), "{e}");
    }

    #[test]
    fn flipped_sign_is_located() {
        let doc: MapDoc = serde_json::from_str(
            r#"{"source":{"degrees":[0,1],"dims":{"0":1,"1":1},"diff":{"0":[["1"]]}},
                "target":{"degrees":[0,1],"dims":{"0":1,"1":1},"diff":{"0":[["1"]]}},
                "maps":{"0":[["1"]],"1":[["-1"]]}}"#,
        )
        .unwrap();
        let e = doc.to_map().unwrap_err().to_string();
        assert!(e.contains("degree 0, basis element #0"), "{e}");
    }

    #[test]
    fn algebra_round_trip() {
        for a in [torus(2), jet(0)] {
            let doc = DolbeaultDoc::from_algebra(&a);
            let text = serde_json::to_string(&doc).unwrap();
            let back: DolbeaultDoc = serde_json::from_str(&text).unwrap();
            let b = back.to_algebra().unwrap();
            assert_eq!(b.space, a.space);
            assert_eq!(b.table, a.table);
        }
    }

    #[test]
    fn iterated_round_trip() {
        let mut r = rng(8);
        let it = IteratedComplex::from_map(&random_morphism(&mut r, 2));
        let doc = IteratedDoc::from_iterated(&it);
        let back = doc.to_iterated().unwrap();
        assert_eq!(back.simple().without_labels(), it.simple().without_labels());
    }
}
