//! Geometric constructors: projective spaces, projective bundles and
//! blowups along smooth centres, together with the Chern-series and
//! pushforward helpers they need.

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{AlgebraError, GradedAlgebra};
use crate::element::Element;
use crate::linalg::{axpy, is_zero_vector, solve, LinalgError, Matrix};
use crate::ring_map::{RingMap, RingMapError, RingMapViolation};
use crate::scalar::{one, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("degree-0 term of a Chern series must be 1")]
    NonUnitConstantTerm,
    #[error("series term {position} has degree {found}")]
    SeriesDegree { position: usize, found: usize },
    #[error("blowup along a divisor is an isomorphism on cohomology; codimension must be >= 2, got {0}")]
    CodimensionTooSmall(usize),
    #[error("centre has dimension {center}, ambient {ambient}, codimension {codim}: need dim Z = dim Y - r")]
    DimensionMismatch { ambient: usize, center: usize, codim: usize },
    #[error("pullback is not a ring map: {}", join_violations(.0))]
    PullbackNotRingMap(Vec<RingMapViolation>),
    #[error("expected {expected} Chern classes, found {found}")]
    ChernCount { expected: usize, found: usize },
    #[error("Chern class c_{index} has degree {found}")]
    ChernDegree { index: usize, found: usize },
    #[error("Chern class c_{0} lives in a different algebra")]
    ChernAlgebra(usize),
    #[error("self-intersection check failed: pullback of pushforward(1) is {computed}, but c_r(N) is {expected}")]
    SelfIntersection { computed: String, expected: String },
    #[error("ambient pairing is degenerate in degree {0}")]
    DegeneratePairing(usize),
    #[error("projective bundle needs rank >= 1 (Chern list c_0..c_s with s >= 1)")]
    BundleRank,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    RingMap(#[from] RingMapError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

fn join_violations(v: &[RingMapViolation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// `H*(P^n) = ℚ[h]/(h^{n+1})` with `∫ h^n = 1`.
pub fn projective_space(n: usize) -> GradedAlgebra {
    projective_space_with_var(n, "h")
}

/// As [`projective_space`], naming the hyperplane class `var`.
pub fn projective_space_with_var(n: usize, var: &str) -> GradedAlgebra {
    let basis = (0..=n).map(|k| vec![power_label(var, k)]).collect();
    GradedAlgebra::from_rule(format!("P^{n}"), basis, vec![one()], |_, _, _, _| vec![one()])
        .expect("projective space is well-formed")
}

fn power_label(var: &str, k: usize) -> String {
    match k {
        0 => "1".to_string(),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    }
}

fn prefixed_label(var: &str, power: usize, label: &str) -> String {
    let head = power_label(var, power);
    match (power, label) {
        (0, _) => label.to_string(),
        (_, "1") => head,
        _ => format!("{head}*{label}"),
    }
}

/// An inhomogeneous class as one homogeneous component per degree `0..=d`.
pub type TotalClass<'a> = Vec<Element<'a>>;

fn check_series<'a>(a: &'a GradedAlgebra, u: &[Element<'a>]) -> Result<TotalClass<'a>, ConstructionError> {
    let top = a.top_degree();
    let mut out: TotalClass<'a> = (0..=top).map(|k| Element::zero(a, k)).collect();
    for (k, term) in u.iter().enumerate() {
        if term.degree() != k {
            return Err(ConstructionError::SeriesDegree {
                position: k,
                found: term.degree(),
            });
        }
        if k <= top {
            out[k] = term.clone();
        }
    }
    Ok(out)
}

/// Product of two total classes, truncated at the top degree.
pub fn series_multiply<'a>(
    a: &'a GradedAlgebra,
    u: &[Element<'a>],
    v: &[Element<'a>],
) -> Result<TotalClass<'a>, ConstructionError> {
    let (u, v) = (check_series(a, u)?, check_series(a, v)?);
    let top = a.top_degree();
    let mut out: TotalClass<'a> = (0..=top).map(|k| Element::zero(a, k)).collect();
    for (i, ui) in u.iter().enumerate() {
        for (j, vj) in v.iter().enumerate().take(top + 1 - i) {
            out[i + j] = out[i + j].add(&ui.multiply(vj)?)?;
        }
    }
    Ok(out)
}

/// Inverse of a total class with constant term 1, by the degree-wise
/// recursion `v_k = −Σ_{i=1..k} u_i v_{k−i}`.
pub fn chern_series_inverse<'a>(a: &'a GradedAlgebra, u: &[Element<'a>]) -> Result<TotalClass<'a>, ConstructionError> {
    let u = check_series(a, u)?;
    if u[0] != a.unit() {
        return Err(ConstructionError::NonUnitConstantTerm);
    }
    let mut v: TotalClass<'a> = vec![a.unit()];
    for k in 1..=a.top_degree() {
        let mut acc = Element::zero(a, k);
        for i in 1..=k {
            acc = acc.sub(&u[i].multiply(&v[k - i])?)?;
        }
        v.push(acc);
    }
    Ok(v)
}

/// Total class `Π (1 + x_i)` of a list of degree-one classes (a Whitney
/// product of line bundles), e.g. `(1 + h)^{n+1}` for `T P^n`.
pub fn total_chern_of_line_bundles<'a>(
    a: &'a GradedAlgebra,
    roots: &[Element<'a>],
) -> Result<TotalClass<'a>, ConstructionError> {
    let mut acc: TotalClass<'a> = vec![a.unit()];
    for root in roots {
        if root.degree() != 1 {
            return Err(AlgebraError::WrongDegree {
                expected: 1,
                found: root.degree(),
            }
            .into());
        }
        acc = series_multiply(a, &acc, &[a.unit(), root.clone()])?;
    }
    check_series(a, &acc)
}

/// Gysin pushforward `ι_*: H^k(Z) → H^{k+r}(Y)`, one matrix per `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pushforward {
    codim: usize,
    matrices: Vec<Matrix>,
}

impl Pushforward {
    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn matrix(&self, k: usize) -> &Matrix {
        &self.matrices[k]
    }

    pub fn apply_coords(&self, k: usize, w: &[Scalar]) -> Vec<Scalar> {
        self.matrices[k].mul_vec(w).expect("coordinate length matches the centre")
    }

    pub fn apply<'y>(&self, ambient: &'y GradedAlgebra, w: &Element<'_>) -> Result<Element<'y>, ConstructionError> {
        if w.is_above_top() {
            return Ok(Element::zero(ambient, w.degree() + self.codim));
        }
        Ok(ambient.element(w.degree() + self.codim, self.apply_coords(w.degree(), w.coords()))?)
    }
}

/// The pushforward determined by adjointness with the pullback:
/// `∫_Y ι_*(w)·y = ∫_Z w·ι*(y)` for all `w`, `y`.
pub fn adjoint_pushforward(pullback: &RingMap<'_>, codim: usize) -> Result<Pushforward, ConstructionError> {
    let (y, z) = (pullback.source(), pullback.target());
    let (dy, dz) = (y.top_degree(), z.top_degree());
    if dz + codim != dy {
        return Err(ConstructionError::DimensionMismatch {
            ambient: dy,
            center: dz,
            codim,
        });
    }
    let mut matrices = Vec::with_capacity(dz + 1);
    for k in 0..=dz {
        let pairing = y.pairing_matrix(k + codim)?;
        if pairing.rows() != pairing.cols() || pairing.rank() != pairing.rows() {
            return Err(ConstructionError::DegeneratePairing(k + codim));
        }
        let dual_degree = dy - k - codim;
        // ι*(y_l) for the complementary basis
        let pulled: Vec<Vec<Scalar>> = (0..y.dim(dual_degree))
            .map(|l| {
                let mut e = vec![Scalar::zero(); y.dim(dual_degree)];
                e[l] = one();
                pullback.apply_coords(dual_degree, &e).expect("dual degree lies in Z")
            })
            .collect();
        let gram_t = pairing.transpose();
        let mut columns = Vec::with_capacity(z.dim(k));
        for j in 0..z.dim(k) {
            let mut w = vec![Scalar::zero(); z.dim(k)];
            w[j] = one();
            let rhs: Vec<Scalar> = pulled
                .iter()
                .map(|p| {
                    let prod = z.mul_coords(k, &w, dz - k, p).expect("degrees sum to the top");
                    z.integrate_coords(&prod)
                })
                .collect();
            let col = solve(&gram_t, &rhs)?.expect("pairing is invertible");
            columns.push(col);
        }
        matrices.push(Matrix::from_columns(y.dim(k + codim), &columns)?);
    }
    Ok(Pushforward { codim, matrices })
}

/// Sign convention for the exceptional class. `Flipped` is the rebuild with
/// `e ↦ −e`, which yields an isomorphic algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExceptionalSign {
    #[default]
    Standard,
    Flipped,
}

/// Data for blowing up `Y` along a smooth centre `Z` of codimension `r`.
#[derive(Debug, Clone)]
pub struct BlowupInput<'a> {
    /// `ι*: H*(Y) → H*(Z)`.
    pub pullback: RingMap<'a>,
    pub codim: usize,
    /// `[c_1(N), …, c_r(N)]`, `c_i` of degree `i` in `Z`.
    pub normal_chern: Vec<Element<'a>>,
    pub sign: ExceptionalSign,
}

impl<'a> BlowupInput<'a> {
    pub fn new(pullback: RingMap<'a>, codim: usize, normal_chern: Vec<Element<'a>>) -> Self {
        BlowupInput {
            pullback,
            codim,
            normal_chern,
            sign: ExceptionalSign::Standard,
        }
    }

    pub fn ambient(&self) -> &'a GradedAlgebra {
        self.pullback.source()
    }

    pub fn center(&self) -> &'a GradedAlgebra {
        self.pullback.target()
    }

    pub fn with_sign(mut self, sign: ExceptionalSign) -> Self {
        self.sign = sign;
        self
    }
}

// Which summand a basis index of a composite algebra points at.
#[derive(Debug, Clone, Copy)]
enum Slot {
    // index into the base algebra in the same degree
    Base(usize),
    // (power, index in the attached algebra's degree k - power)
    Twisted(usize, usize),
}

// Layout of degree k: base block first, then blocks for powers 1..powers.
#[derive(Debug, Clone)]
struct Layout {
    base_dim: usize,
    // (power, attached degree, offset)
    blocks: Vec<(usize, usize, usize)>,
    total: usize,
}

impl Layout {
    fn new(k: usize, base: &GradedAlgebra, attached: &GradedAlgebra, powers: std::ops::Range<usize>) -> Self {
        let base_dim = if k <= base.top_degree() { base.dim(k) } else { 0 };
        let mut offset = base_dim;
        let mut blocks = Vec::new();
        for s in powers {
            if s > k || k - s > attached.top_degree() {
                continue;
            }
            blocks.push((s, k - s, offset));
            offset += attached.dim(k - s);
        }
        Layout {
            base_dim,
            blocks,
            total: offset,
        }
    }

    fn slot(&self, index: usize, attached: &GradedAlgebra) -> Slot {
        if index < self.base_dim {
            return Slot::Base(index);
        }
        for &(s, deg, offset) in &self.blocks {
            if index < offset + attached.dim(deg) {
                return Slot::Twisted(s, index - offset);
            }
        }
        unreachable!("index within the layout")
    }

    fn assemble(&self, base: &[Scalar], twisted: &BTreeMap<usize, Vec<Scalar>>) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(self.total);
        if self.base_dim > 0 {
            out.extend(base.iter().cloned());
        }
        for &(s, _, _) in &self.blocks {
            out.extend(twisted.get(&s).expect("every block is populated").iter().cloned());
        }
        debug_assert_eq!(out.len(), self.total);
        out
    }
}

// Working representation of one graded piece: base part plus Z-coefficients
// of each power of the twisting class.
struct Mixed {
    degree: usize,
    base: Vec<Scalar>,
    twisted: BTreeMap<usize, Vec<Scalar>>,
}

impl Mixed {
    fn new(degree: usize, base_dim: usize) -> Self {
        Mixed {
            degree,
            base: vec![Scalar::zero(); base_dim],
            twisted: BTreeMap::new(),
        }
    }

    // twisted[power] += factor * w, where w lives in `attached` degree `degree - power`
    fn add_twisted(&mut self, attached: &GradedAlgebra, power: usize, factor: &Scalar, w: Option<Vec<Scalar>>) {
        let Some(w) = w else { return };
        if power > self.degree || self.degree - power > attached.top_degree() {
            return;
        }
        let slot = self
            .twisted
            .entry(power)
            .or_insert_with(|| vec![Scalar::zero(); attached.dim(self.degree - power)]);
        axpy(slot, factor, &w);
    }
}

struct BlowupRing<'a, 'i> {
    input: &'i BlowupInput<'a>,
    pushforward: Pushforward,
    layouts: Vec<Layout>,
}

impl BlowupRing<'_, '_> {
    fn y(&self) -> &GradedAlgebra {
        self.input.ambient()
    }

    fn z(&self) -> &GradedAlgebra {
        self.input.center()
    }

    fn pull(&self, k: usize, y: &[Scalar]) -> Option<Vec<Scalar>> {
        self.input.pullback.apply_coords(k, y)
    }

    fn z_mul(&self, k1: usize, a: &[Scalar], k2: usize, b: &[Scalar]) -> Option<Vec<Scalar>> {
        self.z().mul_coords(k1, a, k2, b)
    }

    fn chern(&self, i: usize) -> &Element<'_> {
        &self.input.normal_chern[i - 1]
    }

    fn product(&self, k1: usize, a: usize, k2: usize, b: usize) -> Vec<Scalar> {
        let k = k1 + k2;
        let z = self.z();
        let mut acc = Mixed::new(k, self.layouts[k].base_dim);
        let unit_y = |k: usize, i: usize| {
            let mut v = vec![Scalar::zero(); self.y().dim(k)];
            v[i] = one();
            v
        };
        let unit_z = |k: usize, i: usize| {
            let mut v = vec![Scalar::zero(); z.dim(k)];
            v[i] = one();
            v
        };
        let sa = self.layouts[k1].slot(a, z);
        let sb = self.layouts[k2].slot(b, z);
        match (sa, sb) {
            (Slot::Base(i), Slot::Base(j)) => {
                let c = self.y().structure_constants(k1, i, k2, j).expect("k <= d");
                acc.base = c.to_vec();
            }
            (Slot::Base(i), Slot::Twisted(s, j)) | (Slot::Twisted(s, j), Slot::Base(i)) => {
                let (ky, kz) = if matches!(sa, Slot::Base(_)) { (k1, k2 - s) } else { (k2, k1 - s) };
                if let Some(iy) = self.pull(ky, &unit_y(ky, i)) {
                    let w = self.z_mul(ky, &iy, kz, &unit_z(kz, j));
                    acc.add_twisted(z, s, &one(), w);
                }
            }
            (Slot::Twisted(s, i), Slot::Twisted(t, j)) => {
                let w = self.z_mul(k1 - s, &unit_z(k1 - s, i), k2 - t, &unit_z(k2 - t, j));
                acc.add_twisted(z, s + t, &one(), w);
            }
        }
        self.reduce(&mut acc);
        for &(s, _, _) in &self.layouts[k].blocks {
            acc.twisted
                .entry(s)
                .or_insert_with(|| vec![Scalar::zero(); z.dim(k - s)]);
        }
        self.layouts[k].assemble(&acc.base, &acc.twisted)
    }

    // Rewrites every w⊗e^s with s >= r using
    //   w⊗e^r = σ ι_*(w) + Σ_{i=1}^{r-1} a_i (c_{r-i}(N)·w)⊗e^i
    // where σ = (-1)^r, a_i = -(-1)^{r+i} (standard) or σ = 1, a_i = -1 (flipped),
    // and π*ι_*(w)·e^t = (ι*ι_*(w))⊗e^t for t >= 1.
    fn reduce(&self, acc: &mut Mixed) {
        let r = self.input.codim;
        let z = self.z();
        let dz = z.top_degree();
        while let Some((&s, _)) = acc.twisted.range(r..).next_back() {
            let w = acc.twisted.remove(&s).expect("key exists");
            if is_zero_vector(&w) {
                continue;
            }
            let m = acc.degree - s;
            let t = s - r;
            let (sigma, _) = self.signs(0);
            let pushed = self.pushforward.apply_coords(m, &w);
            if t == 0 {
                axpy(&mut acc.base, &sigma, &pushed);
            } else {
                let back = self.pull(m + r, &pushed);
                acc.add_twisted(z, t, &sigma, back);
            }
            for i in 1..r {
                let (_, a_i) = self.signs(i);
                let c = self.chern(r - i);
                if c.is_above_top() || m + r - i > dz {
                    continue;
                }
                let cw = self.z_mul(r - i, c.coords(), m, &w);
                acc.add_twisted(z, i + t, &a_i, cw);
            }
        }
    }

    fn signs(&self, i: usize) -> (Scalar, Scalar) {
        let r = self.input.codim;
        match self.input.sign {
            ExceptionalSign::Standard => (sign(r), -sign(r + i)),
            ExceptionalSign::Flipped => (one(), -one()),
        }
    }
}

fn sign(n: usize) -> Scalar {
    if n.is_multiple_of(2) {
        one()
    } else {
        -one()
    }
}

/// Validates the input and returns `ι_*`.
fn check_blowup(input: &BlowupInput<'_>) -> Result<Pushforward, ConstructionError> {
    let r = input.codim;
    if r < 2 {
        return Err(ConstructionError::CodimensionTooSmall(r));
    }
    let (y, z) = (input.ambient(), input.center());
    if z.top_degree() + r != y.top_degree() {
        return Err(ConstructionError::DimensionMismatch {
            ambient: y.top_degree(),
            center: z.top_degree(),
            codim: r,
        });
    }
    let report = input.pullback.verify();
    if !report.passed() {
        return Err(ConstructionError::PullbackNotRingMap(report.violations));
    }
    if input.normal_chern.len() != r {
        return Err(ConstructionError::ChernCount {
            expected: r,
            found: input.normal_chern.len(),
        });
    }
    for (idx, c) in input.normal_chern.iter().enumerate() {
        if c.degree() != idx + 1 {
            return Err(ConstructionError::ChernDegree {
                index: idx + 1,
                found: c.degree(),
            });
        }
        if !std::ptr::eq(c.algebra(), z) && c.algebra() != z {
            return Err(ConstructionError::ChernAlgebra(idx + 1));
        }
    }
    let push = adjoint_pushforward(&input.pullback, r)?;
    let self_intersection = input.pullback.apply(&push.apply(y, &z.unit())?)?;
    let top_chern = &input.normal_chern[r - 1];
    let consistent = if top_chern.is_above_top() {
        self_intersection.is_zero()
    } else {
        self_intersection.coords() == top_chern.coords()
    };
    if !consistent {
        return Err(ConstructionError::SelfIntersection {
            computed: self_intersection.to_string(),
            expected: top_chern.to_string(),
        });
    }
    Ok(push)
}

/// Cohomology ring of the blowup of `Y` along `Z`:
/// `H*(X) = π*H*(Y) ⊕ ⊕_{i=1}^{r-1} H^{*-i}(Z)·e^i`, with
/// `π*y·(z⊗e^i) = (ι*y·z)⊗e^i`, `(z⊗e^i)(z'⊗e^j) = (zz')⊗e^{i+j}` and
/// `(−1)^r e^r = π*ι_*(1) − Σ_{i=1}^{r−1} c_{r−i}(N)⊗(−e)^i`, extended
/// `H*(Z)`-linearly.
///
/// Basis labels: `Y` labels verbatim, then `e^i*<zlabel>` (written `e`
/// for `i = 1`, and without `*1` for the unit of `Z`).
pub fn blowup(input: &BlowupInput<'_>) -> Result<GradedAlgebra, ConstructionError> {
    let pushforward = check_blowup(input)?;
    let (y, z) = (input.ambient(), input.center());
    let top = y.top_degree();
    let r = input.codim;
    let layouts: Vec<Layout> = (0..=top).map(|k| Layout::new(k, y, z, 1..r)).collect();
    let basis: Vec<Vec<String>> = layouts
        .iter()
        .enumerate()
        .map(|(k, layout)| {
            let mut labels: Vec<String> = y.basis(k).to_vec();
            for &(s, deg, _) in &layout.blocks {
                labels.extend(z.basis(deg).iter().map(|l| prefixed_label("e", s, l)));
            }
            labels
        })
        .collect();
    let mut integration = y.integration().to_vec();
    integration.resize(layouts[top].total, Scalar::zero());

    let ring = BlowupRing {
        input,
        pushforward,
        layouts,
    };
    let alg = GradedAlgebra::from_rule(format!("Bl({}, {})", y.name(), z.name()), basis, integration, |k1, a, k2, b| {
        ring.product(k1, a, k2, b)
    })?;
    Ok(alg)
}

/// The pushforward `ι_*` used by [`blowup`] for this input, after the same
/// validation.
pub fn blowup_pushforward(input: &BlowupInput<'_>) -> Result<Pushforward, ConstructionError> {
    check_blowup(input)
}

/// Cohomology ring of the projectivization of a rank-`s` bundle with Chern
/// classes `[c_0 = 1, c_1, …, c_s]` on `Y`: `H*(Y)[ζ]` modulo
/// `ζ^s + c_1 ζ^{s−1} + … + c_s = 0`, with `∫ Σ y_i ζ^i = ∫_Y y_{s−1}`.
///
/// Basis labels: `Y` labels for `ζ^0`, then `z^i*<ylabel>`.
pub fn projective_bundle(base: &GradedAlgebra, chern: &[Element<'_>]) -> Result<GradedAlgebra, ConstructionError> {
    if chern.len() < 2 {
        return Err(ConstructionError::BundleRank);
    }
    let rank = chern.len() - 1;
    for (i, c) in chern.iter().enumerate() {
        if c.degree() != i {
            return Err(ConstructionError::ChernDegree {
                index: i,
                found: c.degree(),
            });
        }
        if !std::ptr::eq(c.algebra(), base) && c.algebra() != base {
            return Err(ConstructionError::ChernAlgebra(i));
        }
    }
    if chern[0] != base.unit() {
        return Err(ConstructionError::NonUnitConstantTerm);
    }
    let top = base.top_degree() + rank - 1;
    // ζ^0 is the base block; ζ^1..ζ^{s-1} are attached copies of the base
    let layouts: Vec<Layout> = (0..=top).map(|k| Layout::new(k, base, base, 1..rank)).collect();
    let basis: Vec<Vec<String>> = layouts
        .iter()
        .enumerate()
        .map(|(k, layout)| {
            let mut labels: Vec<String> = if k <= base.top_degree() { base.basis(k).to_vec() } else { Vec::new() };
            for &(s, deg, _) in &layout.blocks {
                labels.extend(base.basis(deg).iter().map(|l| prefixed_label("z", s, l)));
            }
            labels
        })
        .collect();
    let mut integration = vec![Scalar::zero(); layouts[top].total];
    for &(s, _, offset) in &layouts[top].blocks {
        if s == rank - 1 {
            for (i, v) in base.integration().iter().enumerate() {
                integration[offset + i] = v.clone();
            }
        }
    }
    if rank == 1 {
        integration = base.integration().to_vec();
    }

    let unit = |k: usize, i: usize| {
        let mut v = vec![Scalar::zero(); base.dim(k)];
        v[i] = one();
        v
    };
    // Slot::Base(i) is power 0; Twisted(s, i) is power s.
    let decode = |k: usize, idx: usize| -> (usize, usize) {
        match layouts[k].slot(idx, base) {
            Slot::Base(i) => (0, i),
            Slot::Twisted(s, i) => (s, i),
        }
    };
    let alg = GradedAlgebra::from_rule(format!("P(E) over {}", base.name()), basis, integration, |k1, a, k2, b| {
        let k = k1 + k2;
        let (s, i) = decode(k1, a);
        let (t, j) = decode(k2, b);
        // power -> coefficient vector in base degree k - power
        let mut powers: BTreeMap<usize, Vec<Scalar>> = BTreeMap::new();
        if let Some(w) = base.mul_coords(k1 - s, &unit(k1 - s, i), k2 - t, &unit(k2 - t, j)) {
            powers.insert(s + t, w);
        }
        while let Some((&m, _)) = powers.range(rank..).next_back() {
            let w = powers.remove(&m).expect("key exists");
            if is_zero_vector(&w) {
                continue;
            }
            let wdeg = k - m;
            for (ci, c) in chern.iter().enumerate().skip(1) {
                if c.is_above_top() {
                    continue;
                }
                let Some(cw) = base.mul_coords(ci, c.coords(), wdeg, &w) else {
                    continue;
                };
                let target = powers
                    .entry(m - ci)
                    .or_insert_with(|| vec![Scalar::zero(); base.dim(wdeg + ci)]);
                axpy(target, &-one(), &cw);
            }
        }
        let mut out = Vec::with_capacity(layouts[k].total);
        if layouts[k].base_dim > 0 {
            match powers.get(&0) {
                Some(v) => out.extend(v.iter().cloned()),
                None => out.extend(std::iter::repeat_n(Scalar::zero(), layouts[k].base_dim)),
            }
        }
        for &(s, deg, _) in &layouts[k].blocks {
            match powers.get(&s) {
                Some(v) => out.extend(v.iter().cloned()),
                None => out.extend(std::iter::repeat_n(Scalar::zero(), base.dim(deg))),
            }
        }
        out
    })?;
    Ok(alg)
}
