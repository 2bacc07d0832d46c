//! Exact-rational polyhedral engine.
//!
//! Converts between the two Minkowski–Weyl descriptions of a polytope: from
//! vertices to affine-hull equalities plus facet inequalities ([`hull`]) and
//! back ([`vertex_enumerate`]), both through the double description method.
//! No floating point enters any computation here.

mod dd;
mod linalg;

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use dd::DdError;

/// Default ceiling on intermediate double-description ray counts. The
/// fixtures in this crate stay several orders of magnitude below it.
pub const DEFAULT_RAY_BUDGET: usize = 500_000;

/// Linear inequality Σ c_i x_i >= b with primitive integer data (the gcd of
/// all coefficients and the bound is 1). The orientation is meaningful and
/// never flipped.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Inequality {
    pub coeffs: Vec<BigInt>,
    pub bound: BigInt,
}

impl Inequality {
    /// Normalize rational data: clear denominators, divide by the gcd.
    pub fn new(coeffs: Vec<BigRational>, bound: BigRational) -> Self {
        let mut row = coeffs;
        row.push(bound);
        let ints = linalg::clear_denominators(&row);
        let (bound, coeffs) = ints.split_last().expect("nonempty row");
        Inequality { coeffs: coeffs.to_vec(), bound: bound.clone() }
    }

    pub fn from_integers(coeffs: Vec<BigInt>, bound: BigInt) -> Self {
        let mut row = coeffs;
        row.push(bound);
        let ints = linalg::primitive(row);
        let (bound, coeffs) = ints.split_last().expect("nonempty row");
        Inequality { coeffs: coeffs.to_vec(), bound: bound.clone() }
    }

    /// Tab-separated coefficients, then `>=`, then the bound.
    pub fn render(&self) -> String {
        let mut parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        parts.push(">=".to_string());
        parts.push(self.bound.to_string());
        parts.join("\t")
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Affine-hull equation Σ c_i x_i = b, sign-canonicalized (first nonzero
/// coefficient positive) since both orientations are equivalent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Equality {
    pub coeffs: Vec<BigInt>,
    pub bound: BigInt,
}

impl Equality {
    pub fn new(coeffs: Vec<BigRational>, bound: BigRational) -> Self {
        let mut row = coeffs;
        row.push(bound);
        let ints = linalg::canonical_sign(linalg::clear_denominators(&row));
        let (bound, coeffs) = ints.split_last().expect("nonempty row");
        Equality { coeffs: coeffs.to_vec(), bound: bound.clone() }
    }

    pub fn render(&self) -> String {
        let mut parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        parts.push("=".to_string());
        parts.push(self.bound.to_string());
        parts.join("\t")
    }
}

/// Vertex description: distinct rational points with coordinate labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VPolytope {
    pub labels: Vec<String>,
    pub vertices: Vec<Vec<BigRational>>,
}

impl VPolytope {
    pub fn new(labels: Vec<String>, mut vertices: Vec<Vec<BigRational>>) -> Self {
        vertices.sort();
        vertices.dedup();
        VPolytope { labels, vertices }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn affine_dim(&self) -> usize {
        linalg::affine_rank(&self.vertices)
    }
}

/// Half-space description: affine-hull equalities plus facet inequalities,
/// all satisfied by every vertex they were computed from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolytope {
    pub labels: Vec<String>,
    pub equalities: Vec<Equality>,
    pub facets: Vec<Inequality>,
    pub affine_dim: usize,
}

impl HPolytope {
    /// The text form: equalities under an `# affine hull` header, then the
    /// facets, one canonical line each.
    pub fn render_lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        out.push(format_args_line("# affine hull (", self.equalities.len(), " equalities)"));
        for e in &self.equalities {
            out.push(e.render());
        }
        out.push(format_args_line("# facets (", self.facets.len(), ")"));
        for f in &self.facets {
            out.push(f.render());
        }
        out
    }
}

fn format_args_line(a: &str, n: usize, b: &str) -> String {
    let mut s = String::from(a);
    s.push_str(&n.to_string());
    s.push_str(b);
    s
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeometryError {
    NoVertices,
    DimensionMismatch { expected: usize, got: usize },
    /// The polyhedron is unbounded (or contains a line); every instance this
    /// crate cares about is a bounded polytope.
    Unbounded,
    Budget(DdError),
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::NoVertices => write!(f, "polytope has no vertices"),
            GeometryError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            GeometryError::Unbounded => write!(f, "polyhedron is unbounded"),
            GeometryError::Budget(DdError::BudgetExceeded { rays }) => {
                write!(f, "double description ray budget exceeded ({rays} rays)")
            }
            GeometryError::Budget(DdError::NotPointed) => write!(f, "cone is not pointed"),
        }
    }
}

impl core::error::Error for GeometryError {}

/// Facet enumeration: the complete half-space description of conv(vertices).
pub fn hull(v: &VPolytope) -> Result<HPolytope, GeometryError> {
    hull_with_budget(v, DEFAULT_RAY_BUDGET)
}

pub fn hull_with_budget(v: &VPolytope, max_rays: usize) -> Result<HPolytope, GeometryError> {
    let n = v.dim();
    if v.vertices.is_empty() {
        return Err(GeometryError::NoVertices);
    }
    if let Some(bad) = v.vertices.iter().find(|p| p.len() != n) {
        return Err(GeometryError::DimensionMismatch { expected: n, got: bad.len() });
    }
    let base = &v.vertices[0];

    // Affine hull: kernel of the difference matrix gives the equalities;
    // the RREF pivots give coordinates for the hull itself.
    let diffs: Vec<Vec<BigRational>> = v.vertices[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    let mut equalities: Vec<Equality> = linalg::nullspace(&diffs, n)
        .into_iter()
        .map(|c| {
            let bound: BigRational = c.iter().zip(base).map(|(a, b)| a * b).sum();
            Equality::new(c, bound)
        })
        .collect();
    equalities.sort();

    let mut diffs_for_pivots = diffs.clone();
    let pivots = linalg::rref(&mut diffs_for_pivots);
    let d = pivots.len();
    if d == 0 {
        // A single point; no facets.
        return Ok(HPolytope {
            labels: v.labels.clone(),
            equalities,
            facets: Vec::new(),
            affine_dim: 0,
        });
    }

    // Work inside the affine hull: t = (x - base) restricted to the pivot
    // coordinates. Homogenize each vertex as the row (1, t).
    let rows: Vec<Vec<BigInt>> = v
        .vertices
        .iter()
        .map(|p| {
            let mut row = vec![BigRational::one()];
            for &c in &pivots {
                row.push(&p[c] - &base[c]);
            }
            linalg::clear_denominators(&row)
        })
        .collect();

    let rays = dd::extreme_rays(&rows, max_rays).map_err(GeometryError::Budget)?;

    let mut facets: Vec<Inequality> = rays
        .into_iter()
        .map(|ray| {
            // Ray (y0, c): c · t + y0 >= 0, i.e. Σ c_j x_{P_j} >= Σ c_j base_{P_j} - y0.
            let mut coeffs = vec![BigRational::zero(); n];
            let mut bound = -BigRational::from_integer(ray[0].clone());
            for (j, &col) in pivots.iter().enumerate() {
                let cj = BigRational::from_integer(ray[j + 1].clone());
                bound += &cj * &base[col];
                coeffs[col] = cj;
            }
            Inequality::new(coeffs, bound)
        })
        .collect();
    facets.sort();
    facets.dedup();

    let h = HPolytope { labels: v.labels.clone(), equalities, facets, affine_dim: d };
    debug_assert!(v.vertices.iter().all(|p| {
        h.equalities.iter().all(|e| eval_exact(&e.coeffs, &e.bound, p).is_zero())
            && h.facets.iter().all(|f| !eval_exact(&f.coeffs, &f.bound, p).is_negative())
    }));
    Ok(h)
}

fn eval_exact(coeffs: &[BigInt], bound: &BigInt, x: &[BigRational]) -> BigRational {
    let sum: BigRational = coeffs
        .iter()
        .zip(x)
        .map(|(c, v)| BigRational::from_integer(c.clone()) * v)
        .sum();
    sum - BigRational::from_integer(bound.clone())
}

/// Vertex enumeration of {x : equalities hold, facet inequalities hold}.
/// Returns an empty polytope when the system is infeasible; an unbounded
/// polyhedron is an error.
pub fn vertex_enumerate(h: &HPolytope) -> Result<VPolytope, GeometryError> {
    vertex_enumerate_with_budget(h, DEFAULT_RAY_BUDGET)
}

pub fn vertex_enumerate_with_budget(
    h: &HPolytope,
    max_rays: usize,
) -> Result<VPolytope, GeometryError> {
    let n = h.labels.len();
    let empty = || VPolytope { labels: h.labels.clone(), vertices: Vec::new() };

    // Solve the equality system: x = x0 + N t.
    let mut aug: Vec<Vec<BigRational>> = h
        .equalities
        .iter()
        .map(|e| {
            let mut row: Vec<BigRational> =
                e.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect();
            row.push(BigRational::from_integer(e.bound.clone()));
            row
        })
        .collect();
    let pivots = linalg::rref(&mut aug);
    if pivots.contains(&n) {
        // 0 = 1 row: inconsistent equalities, empty polytope.
        return Ok(empty());
    }
    let mut x0 = vec![BigRational::zero(); n];
    for (i, &p) in pivots.iter().enumerate() {
        x0[p] = aug[i][n].clone();
    }
    let coeff_rows: Vec<Vec<BigRational>> =
        aug.iter().map(|r| r[..n].to_vec()).take(pivots.len()).collect();
    let nullbasis = linalg::nullspace(&coeff_rows, n);
    let d = if h.equalities.is_empty() { n } else { nullbasis.len() };
    let nullbasis = if h.equalities.is_empty() {
        (0..n)
            .map(|i| {
                let mut v = vec![BigRational::zero(); n];
                v[i] = BigRational::one();
                v
            })
            .collect()
    } else {
        nullbasis
    };

    if d == 0 {
        // Unique solution; a vertex iff it satisfies the inequalities.
        let ok = h.facets.iter().all(|f| !eval_exact(&f.coeffs, &f.bound, &x0).is_negative());
        return Ok(if ok {
            VPolytope::new(h.labels.clone(), vec![x0])
        } else {
            empty()
        });
    }

    // Cone over (t, w): (c·N) t + (c·x0 - b) w >= 0 per inequality, w >= 0.
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(h.facets.len() + 1);
    for f in &h.facets {
        let mut row: Vec<BigRational> = Vec::with_capacity(d + 1);
        for basis_vec in &nullbasis {
            let v: BigRational = f
                .coeffs
                .iter()
                .zip(basis_vec)
                .map(|(c, nv)| BigRational::from_integer(c.clone()) * nv)
                .sum();
            row.push(v);
        }
        let w_coeff = eval_exact(&f.coeffs, &f.bound, &x0);
        row.push(w_coeff);
        rows.push(linalg::clear_denominators(&row));
    }
    let mut w_row = vec![BigInt::zero(); d + 1];
    w_row[d] = BigInt::one();
    rows.push(w_row);

    let rays = match dd::extreme_rays(&rows, max_rays) {
        Ok(r) => r,
        Err(DdError::NotPointed) => return Err(GeometryError::Unbounded),
        Err(e) => return Err(GeometryError::Budget(e)),
    };

    let mut vertices = Vec::new();
    for ray in rays {
        let w = &ray[d];
        if w.is_zero() {
            return Err(GeometryError::Unbounded);
        }
        debug_assert!(w.is_positive());
        let mut x = x0.clone();
        for (j, basis_vec) in nullbasis.iter().enumerate() {
            let tj = BigRational::new(ray[j].clone(), w.clone());
            for (xi, nv) in x.iter_mut().zip(basis_vec) {
                *xi += &tj * nv;
            }
        }
        vertices.push(x);
    }
    Ok(VPolytope::new(h.labels.clone(), vertices))
}

/// How an inequality sits relative to a vertex set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Verdict {
    /// Some vertex violates it.
    Invalid,
    /// Valid, tight nowhere.
    Valid,
    /// Valid and tight on a set of affine rank < dim - 1.
    Supporting,
    /// Valid and tight on a set of affine rank exactly dim - 1 within the
    /// polytope's affine hull.
    Facet,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Invalid => "invalid",
            Verdict::Valid => "valid",
            Verdict::Supporting => "supporting",
            Verdict::Facet => "facet",
        };
        f.write_str(s)
    }
}

pub fn verify_inequality(v: &VPolytope, ineq: &Inequality) -> Result<Verdict, GeometryError> {
    if ineq.coeffs.len() != v.dim() {
        return Err(GeometryError::DimensionMismatch { expected: v.dim(), got: ineq.coeffs.len() });
    }
    let mut tight: Vec<Vec<BigRational>> = Vec::new();
    for p in &v.vertices {
        let slack = eval_exact(&ineq.coeffs, &ineq.bound, p);
        if slack.is_negative() {
            return Ok(Verdict::Invalid);
        }
        if slack.is_zero() {
            tight.push(p.clone());
        }
    }
    if tight.is_empty() {
        return Ok(Verdict::Valid);
    }
    let poly_dim = linalg::affine_rank(&v.vertices);
    if poly_dim >= 1 && linalg::affine_rank(&tight) == poly_dim - 1 {
        Ok(Verdict::Facet)
    } else {
        Ok(Verdict::Supporting)
    }
}

/// Exact evaluation of an inequality at a rational point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub satisfied: bool,
    pub slack: BigRational,
}

pub fn evaluate(x: &[BigRational], ineq: &Inequality) -> Result<Evaluation, GeometryError> {
    if ineq.coeffs.len() != x.len() {
        return Err(GeometryError::DimensionMismatch { expected: ineq.coeffs.len(), got: x.len() });
    }
    let slack = eval_exact(&ineq.coeffs, &ineq.bound, x);
    Ok(Evaluation { satisfied: !slack.is_negative(), slack })
}

/// Floating evaluation for probability tables produced by the Born rule.
pub fn evaluate_f64(x: &[f64], ineq: &Inequality) -> Result<(bool, f64), GeometryError> {
    if ineq.coeffs.len() != x.len() {
        return Err(GeometryError::DimensionMismatch { expected: ineq.coeffs.len(), got: x.len() });
    }
    let mut slack = 0.0;
    for (c, v) in ineq.coeffs.iter().zip(x) {
        slack += c.to_f64().unwrap_or(f64::NAN) * v;
    }
    slack -= ineq.bound.to_f64().unwrap_or(f64::NAN);
    Ok((slack >= 0.0, slack))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn points(raw: &[&[i64]]) -> Vec<Vec<BigRational>> {
        raw.iter().map(|p| p.iter().map(|&x| rat(x, 1)).collect()).collect()
    }

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| alloc::format!("x{}", i + 1)).collect()
    }

    #[test]
    fn simplex_hull() {
        let v = VPolytope::new(labels(3), points(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        let h = hull(&v).unwrap();
        assert_eq!(h.affine_dim, 2);
        assert_eq!(h.equalities.len(), 1);
        assert_eq!(h.equalities[0].render(), "1\t1\t1\t=\t1");
        assert_eq!(h.facets.len(), 3);
        // Facets are x_i >= 0 modulo the affine hull.
        for f in &h.facets {
            assert_eq!(verify_inequality(&v, f).unwrap(), Verdict::Facet);
        }
    }

    #[test]
    fn unit_square_hull_and_back() {
        let v = VPolytope::new(labels(2), points(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]));
        let h = hull(&v).unwrap();
        assert_eq!(h.affine_dim, 2);
        assert!(h.equalities.is_empty());
        assert_eq!(h.facets.len(), 4);
        let back = vertex_enumerate(&h).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn single_point_hull() {
        let v = VPolytope::new(labels(2), points(&[&[3, 4]]));
        let h = hull(&v).unwrap();
        assert_eq!(h.affine_dim, 0);
        assert!(h.facets.is_empty());
        assert_eq!(h.equalities.len(), 2);
        let back = vertex_enumerate(&h).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn segment_hull() {
        let v = VPolytope::new(labels(2), points(&[&[0, 0], &[2, 2]]));
        let h = hull(&v).unwrap();
        assert_eq!(h.affine_dim, 1);
        assert_eq!(h.equalities.len(), 1); // x = y
        assert_eq!(h.facets.len(), 2);
        let back = vertex_enumerate(&h).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn hull_is_input_order_invariant() {
        let a = VPolytope::new(labels(2), points(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]));
        let b = VPolytope::new(labels(2), points(&[&[1, 1], &[0, 1], &[1, 0], &[0, 0]]));
        assert_eq!(hull(&a).unwrap(), hull(&b).unwrap());
    }

    #[test]
    fn verify_verdicts() {
        let v = VPolytope::new(labels(2), points(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]));
        // x >= 0 is a facet.
        let facet = Inequality::from_integers(vec![1.into(), 0.into()], 0.into());
        assert_eq!(verify_inequality(&v, &facet).unwrap(), Verdict::Facet);
        // x + y >= 0 touches only the origin: supporting.
        let supp = Inequality::from_integers(vec![1.into(), 1.into()], 0.into());
        assert_eq!(verify_inequality(&v, &supp).unwrap(), Verdict::Supporting);
        // x + y >= -1 touches nothing: valid.
        let valid = Inequality::from_integers(vec![1.into(), 1.into()], (-1).into());
        assert_eq!(verify_inequality(&v, &valid).unwrap(), Verdict::Valid);
        // x + y >= 1 cuts off the origin: invalid.
        let invalid = Inequality::from_integers(vec![1.into(), 1.into()], 1.into());
        assert_eq!(verify_inequality(&v, &invalid).unwrap(), Verdict::Invalid);
        // 0 >= -1 is trivially valid.
        let trivial = Inequality::from_integers(vec![0.into(), 0.into()], (-1).into());
        assert_eq!(verify_inequality(&v, &trivial).unwrap(), Verdict::Valid);
    }

    #[test]
    fn evaluate_slack() {
        let ineq = Inequality::from_integers(vec![1.into(), 1.into(), (-1).into()], 0.into());
        let x = [rat(1, 2), rat(0, 1), rat(1, 1)];
        let e = evaluate(&x, &ineq).unwrap();
        assert!(!e.satisfied);
        assert_eq!(e.slack, rat(-1, 2));
    }

    #[test]
    fn infeasible_system_is_empty() {
        // x >= 0 and -x >= 1 cannot hold.
        let h = HPolytope {
            labels: labels(1),
            equalities: vec![],
            facets: vec![
                Inequality::from_integers(vec![1.into()], 0.into()),
                Inequality::from_integers(vec![(-1).into()], 1.into()),
            ],
            affine_dim: 1,
        };
        let v = vertex_enumerate(&h).unwrap();
        assert!(v.vertices.is_empty());
    }

    #[test]
    fn unbounded_is_an_error() {
        let h = HPolytope {
            labels: labels(2),
            equalities: vec![],
            facets: vec![
                Inequality::from_integers(vec![1.into(), 0.into()], 0.into()),
                Inequality::from_integers(vec![0.into(), 1.into()], 0.into()),
            ],
            affine_dim: 2,
        };
        assert_eq!(vertex_enumerate(&h), Err(GeometryError::Unbounded));
    }

    #[test]
    fn inconsistent_equalities_are_empty() {
        let h = HPolytope {
            labels: labels(2),
            equalities: vec![
                Equality::new(vec![rat(1, 1), rat(1, 1)], rat(1, 1)),
                Equality::new(vec![rat(1, 1), rat(1, 1)], rat(2, 1)),
            ],
            facets: vec![],
            affine_dim: 0,
        };
        let v = vertex_enumerate(&h).unwrap();
        assert!(v.vertices.is_empty());
    }
}
