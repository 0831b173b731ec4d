//! Exact integer calculus for the Seifert structure of the unit tangent
//! bundle: singular-fiber invariants, the gluing matrices `M_{n,k,c}`,
//! lens spaces and the boundary curves of the pair of pants cut out by the
//! reference vector field.
//!
//! Curve coordinates on a boundary torus are written `(longitude, meridian)`,
//! so a regular fiber on the boundary of a `(k,1)` Seifert torus is `(k, 1)`.

use std::fmt;

use num_integer::Integer;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeifertError {
    #[error("L(0,{0}) is not a lens space presentation (q must be ±1)")]
    ZeroOrder(i64),
    #[error("L({p},{q}) is not a lens space presentation (gcd(p,q) = {gcd})")]
    NotCoprime { p: i64, q: i64, gcd: i64 },
    #[error("singular fiber ({mu},{nu}) violates gcd = 1, μ > 0, 0 ≤ ν ≤ μ/2")]
    BadFiber { mu: i64, nu: i64 },
    #[error("curve coefficients (0,0) do not describe a curve")]
    ZeroCurve,
    #[error("Seifert data needs n, k >= 2")]
    BadOrders,
}

/// `{O/N, o/n, g | b; (μ₁,ν₁),…}` with `b` left open for bundles with boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertInvariants {
    pub orientable_total: bool,
    pub orientable_base: bool,
    pub genus: u32,
    pub euler: Option<i64>,
    singular: Vec<(i64, i64)>,
}

impl SeifertInvariants {
    pub fn new(
        orientable_total: bool,
        orientable_base: bool,
        genus: u32,
        euler: Option<i64>,
        singular: Vec<(i64, i64)>,
    ) -> Result<Self, SeifertError> {
        for &(mu, nu) in &singular {
            if mu <= 0 || nu < 0 || 2 * nu > mu || mu.gcd(&nu) != 1 {
                return Err(SeifertError::BadFiber { mu, nu });
            }
        }
        Ok(Self {
            orientable_total,
            orientable_base,
            genus,
            euler,
            singular,
        })
    }

    pub fn singular(&self) -> &[(i64, i64)] {
        &self.singular
    }

    pub fn with_euler(&self, b: i64) -> Self {
        Self {
            euler: Some(b),
            ..self.clone()
        }
    }
}

impl fmt::Display for SeifertInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let o = if self.orientable_total { "O" } else { "N" };
        let ob = if self.orientable_base { "o" } else { "n" };
        write!(f, "{{{o},{ob},{}|", self.genus)?;
        match self.euler {
            Some(b) => write!(f, "{b}")?,
            None => write!(f, "·")?,
        }
        for (mu, nu) in &self.singular {
            write!(f, ";({mu},{nu})")?;
        }
        write!(f, "}}")
    }
}

/// Unit tangent bundle of the `(n,k)` orbifold: two singular fibers of types
/// `(k,1)` and `(n,1)` over a genus-0 base, Euler number undetermined.
pub fn ut_invariants(n: i64, k: i64) -> Result<SeifertInvariants, SeifertError> {
    if n < 2 || k < 2 {
        return Err(SeifertError::BadOrders);
    }
    SeifertInvariants::new(true, true, 0, None, vec![(k, 1), (n, 1)])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurveBasis {
    /// `(longitude, meridian)` of a solid torus.
    MeridianLongitude,
    /// `(crossing curve, fiber)` of a fibered boundary torus.
    CrossingFiber,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CurveClass {
    pub basis: CurveBasis,
    coeffs: [i64; 2],
}

impl CurveClass {
    pub fn new(basis: CurveBasis, coeffs: [i64; 2]) -> Result<Self, SeifertError> {
        if coeffs == [0, 0] {
            return Err(SeifertError::ZeroCurve);
        }
        Ok(Self { basis, coeffs })
    }

    pub fn coeffs(&self) -> [i64; 2] {
        self.coeffs
    }
}

/// 2×2 integer matrix with determinant −1 (an orientation-reversing torus map).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GluingMatrix {
    entries: [[i64; 2]; 2],
}

impl GluingMatrix {
    pub fn entries(&self) -> [[i64; 2]; 2] {
        self.entries
    }

    pub fn determinant(&self) -> i64 {
        let [[a, b], [c, d]] = self.entries;
        a * d - b * c
    }

    pub fn apply(&self, v: [i64; 2]) -> [i64; 2] {
        let [[a, b], [c, d]] = self.entries;
        [a * v[0] + b * v[1], c * v[0] + d * v[1]]
    }
}

/// `M_{n,k,c} = (kc−1, n+k−nkc; c, 1−nc)`: the orientation-reversing gluings
/// of the `(n,1)` torus boundary onto the `(k,1)` torus boundary that send
/// the `(n,1)` fiber to the `(k,1)` fiber.
pub fn gluing_matrix(n: i64, k: i64, c: i64) -> GluingMatrix {
    GluingMatrix {
        entries: [[k * c - 1, n + k - n * k * c], [c, 1 - n * c]],
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LensName {
    S3,
    S2xS1,
    Lens,
}

/// A lens space `L(p,q)` in normal form: `p ≥ 0`, `0 ≤ q < p` for `p ≥ 2`,
/// `L(1,0) = S³`, `L(0,1) = S²×S¹`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LensSpace {
    p: i64,
    q: i64,
}

impl LensSpace {
    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn name(&self) -> LensName {
        match self.p {
            0 => LensName::S2xS1,
            1 => LensName::S3,
            _ => LensName::Lens,
        }
    }

    pub fn is_s3(&self) -> bool {
        self.p == 1
    }

    /// Homeomorphism (orientation ignored): `L(p,q) ≅ L(p,q')` iff
    /// `q' ≡ ±q^{±1} (mod p)`. This is the classical classification, not
    /// something the embedding calculus derives.
    pub fn homeomorphic(&self, other: &LensSpace) -> bool {
        if self.p != other.p {
            return false;
        }
        if self.p <= 1 {
            return true;
        }
        let p = self.p;
        let q = self.q;
        let qi = mod_inverse(q, p).expect("normalized lens spaces have gcd(p,q) = 1");
        [q, p - q, qi, p - qi]
            .iter()
            .any(|c| c.rem_euclid(p) == other.q)
    }
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.name() {
            LensName::S3 => write!(f, "S3"),
            LensName::S2xS1 => write!(f, "S2xS1"),
            LensName::Lens => write!(f, "L({},{})", self.p, self.q),
        }
    }
}

fn mod_inverse(q: i64, p: i64) -> Option<i64> {
    let e = q.rem_euclid(p).extended_gcd(&p);
    (e.gcd == 1).then(|| e.x.rem_euclid(p))
}

/// Normal form of `L(p,q)`. `(p,q)` and `(−p,−q)` name the same gluing curve;
/// `q` is then reduced mod `p`.
pub fn normalize_lens(p: i64, q: i64) -> Result<LensSpace, SeifertError> {
    let (p, q) = if p < 0 { (-p, -q) } else { (p, q) };
    match p {
        0 => {
            if q.abs() != 1 {
                return Err(SeifertError::ZeroOrder(q));
            }
            Ok(LensSpace { p: 0, q: 1 })
        }
        1 => Ok(LensSpace { p: 1, q: 0 }),
        _ => {
            let gcd = p.gcd(&q);
            if gcd != 1 {
                return Err(SeifertError::NotCoprime { p, q, gcd });
            }
            Ok(LensSpace {
                p,
                q: q.rem_euclid(p),
            })
        }
    }
}

/// The lens space `L(n+k−nkc, 1−nc)` containing the unit tangent bundle when
/// the tori are glued by `M_{n,k,c}`.
pub fn lens_from_embedding(n: i64, k: i64, c: i64) -> LensSpace {
    let m = gluing_matrix(n, k, c).entries();
    // The column (m[0][1], m[1][1]) of a determinant −1 matrix is primitive.
    normalize_lens(m[0][1], m[1][1]).expect("columns of unimodular matrices are primitive")
}

/// Whether some `c` makes `L(n+k−nkc, 1−nc)` the 3-sphere, with the witness.
/// Solves `nk·c = n + k ∓ 1` exactly.
pub fn s3_embedding_exists(n: i64, k: i64) -> Option<i64> {
    let nk = n * k;
    if nk == 0 {
        return None;
    }
    [n + k - 1, n + k + 1]
        .into_iter()
        .find(|t| t % nk == 0)
        .map(|t| t / nk)
}

/// Euler number of the closed manifold for gluing parameter `c`: `b = c − 1`.
pub fn euler_from_c(c: i64) -> i64 {
    c - 1
}

pub fn c_from_euler(b: i64) -> i64 {
    b + 1
}

/// Boundary curves of the pair of pants cut out by the reference vector field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryCurves {
    /// On the boundary of the `(2,1)` torus.
    pub alpha: CurveClass,
    /// On the boundary of the `(k,1)` torus.
    pub beta: CurveClass,
    /// On the cusp torus, whose longitude is isotopic to a fiber.
    pub gamma: CurveClass,
}

/// `α′ = (−1,−1)`, `β′ = (1,0)`, `γ′ = μ + b·λ`.
///
/// `α′` is a priori `(−1,0)` or `(−1,−1)`; only `(−1,−1)` lets
/// `M_{k,2,c}·α′` decompose as `−β′ + (c−1)·f`, which pins it down.
pub fn boundary_curves(k: i64, b: i64) -> Result<BoundaryCurves, SeifertError> {
    if k < 3 || k % 2 == 0 {
        return Err(SeifertError::BadOrders);
    }
    Ok(BoundaryCurves {
        alpha: CurveClass::new(CurveBasis::MeridianLongitude, [-1, -1])?,
        beta: CurveClass::new(CurveBasis::MeridianLongitude, [1, 0])?,
        gamma: CurveClass::new(CurveBasis::MeridianLongitude, [b, 1])?,
    })
}
