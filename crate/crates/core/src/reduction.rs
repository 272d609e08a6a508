//! Integral reduction and orbit classification in M(J): the diagonal
//! reduced form with replayable witnesses, the field-case canonical forms,
//! projectivity tests, the projective canonical form (1, eps, diag(1,1,k), 0),
//! the orbit invariants d1..d4, and degenerate orbit labels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::freudenthal::{FreudenthalElement, GroupGenerator, GroupWord};
use crate::jordan::{JordanElement, JordanKind};
use crate::scalar::{gcd_slice, Scalar};
use crate::structure::{diagonalize_field, smith_normal_form};

type MInt = FreudenthalElement<BigInt>;
type MRat = FreudenthalElement<BigRational>;
type JInt = JordanElement<BigInt>;

/// A diagonal reduced element (alpha, beta, diag(a1,a2,a3), 0) with
/// alpha > 0, alpha | beta, alpha | a_i, together with the witness word
/// that carries the source element onto it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalReduced {
    pub kind: JordanKind,
    pub alpha: BigInt,
    pub beta: BigInt,
    pub a: [BigInt; 3],
    pub witness: GroupWord<BigInt>,
}

impl DiagonalReduced {
    pub fn element(&self) -> MInt {
        FreudenthalElement {
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            a: JordanElement::diagonal(self.kind, self.a.clone()),
            b: JordanElement::zero(self.kind),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "alpha": Scalar::to_json(&self.alpha),
            "beta": Scalar::to_json(&self.beta),
            "a": self.a.iter().map(Scalar::to_json).collect::<Vec<_>>(),
            "witness": self.witness.to_json(),
        })
    }
}

fn is_reduced_shape(x: &MInt) -> bool {
    x.b.is_zero()
        && x.a.is_diagonal()
        && !Scalar::is_negative(&x.alpha)
        && !Scalar::is_zero(&x.alpha)
        && x.beta.div_exact(&x.alpha).is_some()
        && x.a.diag().iter().all(|ai| ai.div_exact(&x.alpha).is_some())
}

struct RedState {
    x: MInt,
    witness: GroupWord<BigInt>,
    fuel: u32,
}

impl RedState {
    fn push(&mut self, g: GroupGenerator<BigInt>) -> Result<()> {
        self.x = g.apply(&self.x)?;
        self.witness.push(g);
        Ok(())
    }

    fn burn(&mut self) -> Result<()> {
        if self.fuel == 0 {
            return Err(Error::Internal("reduction failed to terminate".into()));
        }
        self.fuel -= 1;
        Ok(())
    }

    /// Apply T(s) so the B slot becomes the Smith normal form of B:
    /// s = (w*)^{-1} for the Smith witness w gives s*^{-1} = w.
    fn smith_b_slot(&mut self) -> Result<BigInt> {
        let (d, w) = smith_normal_form(&self.x.b)?;
        if !w.moves().is_empty() {
            self.push(GroupGenerator::Struct(w.adjoint_inverse()))?;
        }
        debug_assert_eq!(self.x.b.diag(), &d.d);
        Ok(d.d[0].clone())
    }

    /// Apply T(s) with s(A) the Smith normal form of A.
    fn smith_a_slot(&mut self) -> Result<()> {
        let (_, w) = smith_normal_form(&self.x.a)?;
        if !w.moves().is_empty() {
            self.push(GroupGenerator::Struct(w))?;
        }
        Ok(())
    }

    /// RED1: drive the left column (alpha, B) to (g, 0) with g > 0 by
    /// alternately reducing alpha modulo gcd(B) (into {1..gcd(B)}) and B
    /// modulo alpha. Precondition: (alpha, B) != (0, 0).
    fn red1(&mut self) -> Result<()> {
        loop {
            self.burn()?;
            if self.x.b.is_zero() {
                if !Scalar::is_negative(&self.x.alpha) {
                    debug_assert!(!self.x.alpha.is_zero());
                    return Ok(());
                }
                // negative alpha: repopulate B so the mod-reduction below can
                // land alpha in a positive residue class
                let unit = JInt::unit(self.x.kind());
                self.push(GroupGenerator::Psi(unit))?;
                continue;
            }
            // m2 = gcd(B) at the leading diagonal slot
            let m2 = self.smith_b_slot()?;
            // reduce alpha modulo m2 into {1..m2} with a rank-1 phi
            let mut r = self.x.alpha.mod_floor(&m2);
            if r.is_zero() {
                r = m2.clone();
            }
            if r != self.x.alpha {
                let c1 = Scalar::div_exact(&(&r - &self.x.alpha), &m2).expect("residue step");
                let c = JInt::diagonal(self.x.kind(), [c1, BigInt::from(0), BigInt::from(0)]);
                self.push(GroupGenerator::Phi(c))?;
                debug_assert_eq!(self.x.alpha, r);
            }
            // reduce every coordinate of B modulo alpha
            let alpha = self.x.alpha.clone();
            let d: Vec<BigInt> = self
                .x
                .b
                .to_coords()
                .iter()
                .map(|b| -b.div_floor(&alpha))
                .collect();
            if d.iter().any(|v| !v.is_zero()) {
                let d = JordanElement::from_coords(self.x.kind(), &d)?;
                self.push(GroupGenerator::Psi(d))?;
            }
            // loop: either B became 0 (done) or gcd(B) < alpha strictly
        }
    }

    /// RED2: state (g, beta, A, 0) with g > 0 and g not dividing
    /// gcd(beta, A). Produce a positive value < g in the right column.
    fn red2(&mut self) -> Result<()> {
        let g = self.x.alpha.clone();
        debug_assert!(!Scalar::is_negative(&g) && !g.is_zero());
        let g_divides = |v: &BigInt| v.div_exact(&g).is_some();
        if self.x.a.is_zero() {
            // g does not divide beta; seed A with g via a rank-2 psi
            let d = JInt::diagonal_i64(self.x.kind(), [0, 1, 1]);
            debug_assert!(d.norm().is_zero());
            self.push(GroupGenerator::Psi(d))?;
            // A gained g * diag(1, 0, 0)
        } else {
            self.smith_a_slot()?;
        }
        let a1 = self.x.a.diag()[0].clone();
        if !g_divides(&a1) {
            // shift a1 into {1..g-1} with psi(diag(0, 1, d3))
            let r = a1.mod_floor(&g);
            debug_assert!(!r.is_zero());
            let d3 = Scalar::div_exact(&(&r - &a1), &g).expect("residue step");
            let d = JInt::diagonal(self.x.kind(), [BigInt::from(0), BigInt::from(1), d3]);
            self.push(GroupGenerator::Psi(d))?;
            debug_assert_eq!(self.x.a.diag()[0], r);
            return Ok(());
        }
        // g | A, so g does not divide beta: first make a1 exactly g, then
        // shift beta by multiples of a1 = g into {1..g-1}.
        if a1 != g {
            let d3 = Scalar::div_exact(&(&g - &a1), &g).expect("g divides a1");
            let d = JInt::diagonal(self.x.kind(), [BigInt::from(0), BigInt::from(1), d3]);
            self.push(GroupGenerator::Psi(d))?;
            debug_assert_eq!(self.x.a.diag()[0], g);
        }
        let beta = self.x.beta.clone();
        let r = beta.mod_floor(&g);
        debug_assert!(!r.is_zero());
        let dscale = Scalar::div_exact(&(&r - &beta), &g).expect("residue step");
        let d = JInt::diagonal(self.x.kind(), [dscale, BigInt::from(0), BigInt::from(0)]);
        self.push(GroupGenerator::Psi(d))?;
        debug_assert_eq!(self.x.beta, r);
        Ok(())
    }
}

/// Reduction to the diagonal reduced form for the split Hermitian kinds,
/// interleaving the left- and right-column Euclid passes.
fn reduce_hermitian(x: &MInt) -> Result<DiagonalReduced> {
    let mut st = RedState {
        x: x.clone(),
        witness: GroupWord::identity(),
        fuel: 100_000,
    };
    if st.x.alpha.is_zero() && st.x.b.is_zero() {
        st.push(GroupGenerator::Tau)?;
    }
    st.red1()?;
    loop {
        st.burn()?;
        // state (g, beta, A, 0), g > 0
        let g = st.x.alpha.clone();
        let divides = |v: &BigInt| v.div_exact(&g).is_some();
        if divides(&st.x.beta) && st.x.a.to_coords().iter().all(|v| divides(v)) {
            break;
        }
        st.red2()?;
        st.push(GroupGenerator::Tau)?;
        st.red1()?;
    }
    if !st.x.a.is_diagonal() {
        st.smith_a_slot()?;
    }
    debug_assert!(is_reduced_shape(&st.x));
    Ok(DiagonalReduced {
        kind: st.x.kind(),
        alpha: st.x.alpha.clone(),
        beta: st.x.beta.clone(),
        a: st.x.a.diag().clone(),
        witness: st.witness,
    })
}

/// Coordinate positions of the rank-8 diagonal module in the order
/// [alpha, beta, a1, a2, a3, b1, b2, b3].
const AL: usize = 0;
const BE: usize = 1;
const A1: usize = 2;
const B1: usize = 5;

/// For each tensor axis, the (upper-target, source) coordinate pairs: the
/// single-axis upper elementary matrix adds t * source into target, and is
/// the image of phi(t E_axis); the lower one is psi(t E_axis).
const AXIS_PAIRS: [[(usize, usize); 4]; 3] = [
    [(AL, B1), (B1 + 2, A1 + 1), (B1 + 1, A1 + 2), (A1, BE)],
    [(AL, B1 + 1), (B1 + 2, A1), (B1, A1 + 2), (A1 + 1, BE)],
    [(AL, B1 + 2), (B1 + 1, A1), (B1, A1 + 1), (A1 + 2, BE)],
];

struct CubeState {
    c: [BigInt; 8],
    witness: GroupWord<BigInt>,
    fuel: u32,
}

impl CubeState {
    fn burn(&mut self) -> Result<()> {
        if self.fuel == 0 {
            return Err(Error::Internal("cube reduction failed to terminate".into()));
        }
        self.fuel -= 1;
        Ok(())
    }

    fn gen_for(&self, axis: usize, upper: bool, t: BigInt) -> GroupGenerator<BigInt> {
        let mut diag = [BigInt::from(0), BigInt::from(0), BigInt::from(0)];
        diag[axis] = t;
        let c = JInt::diagonal(JordanKind::Diag3, diag);
        if upper {
            GroupGenerator::Phi(c)
        } else {
            GroupGenerator::Psi(c)
        }
    }

    fn apply(&mut self, axis: usize, upper: bool, t: BigInt) {
        let g = self.gen_for(axis, upper, t.clone());
        for &(p, q) in &AXIS_PAIRS[axis] {
            let (tgt, src) = if upper { (p, q) } else { (q, p) };
            self.c[tgt] = &self.c[tgt] + &t * &self.c[src];
        }
        self.witness.push(g);
    }

    fn tau(&mut self) {
        // (alpha, beta, A, B) -> (-beta, alpha, -B, A)
        let old = self.c.clone();
        self.c[AL] = -&old[BE];
        self.c[BE] = old[AL].clone();
        for i in 0..3 {
            self.c[A1 + i] = -&old[B1 + i];
            self.c[B1 + i] = old[A1 + i].clone();
        }
        self.witness.push(GroupGenerator::Tau);
    }

    /// Euclid between alpha and the neighbor b_i (axis i), ending with
    /// b_i = 0 and alpha = gcd(alpha, b_i) > 0.
    fn euclid_neighbor(&mut self, i: usize) -> Result<()> {
        loop {
            self.burn()?;
            let b = self.c[B1 + i].clone();
            if b.is_zero() {
                return Ok(());
            }
            let alpha = self.c[AL].clone();
            debug_assert!(!alpha.is_zero());
            // b_i -= floor(b_i / |alpha|) * alpha (lower move on axis i)
            let q = b.div_floor(&Scalar::abs(&alpha));
            if !q.is_zero() {
                let t = if Scalar::is_negative(&alpha) { q.clone() } else { -&q };
                self.apply(i, false, t);
            }
            let b = self.c[B1 + i].clone();
            if b.is_zero() {
                return Ok(());
            }
            // 0 < b < |alpha|: shrink alpha into {1..b}
            let mut r = alpha.mod_floor(&b);
            if r.is_zero() {
                r = b.clone();
            }
            let t = Scalar::div_exact(&(&r - &alpha), &b).expect("residue step");
            self.apply(i, true, t);
        }
    }
}

/// Diagonal-algebra reduction through the rank-8 tensor model: gcd is
/// driven into the alpha corner by single-axis row reductions.
fn reduce_diag3(x: &MInt) -> Result<DiagonalReduced> {
    let mut st = CubeState {
        c: x.to_coords().try_into().expect("rank 8 module"),
        witness: GroupWord::identity(),
        fuel: 100_000,
    };
    loop {
        st.burn()?;
        // make alpha nonzero
        if st.c[AL].is_zero() {
            if let Some(i) = (0..3).find(|&i| !st.c[B1 + i].is_zero()) {
                st.apply(i, true, BigInt::from(1)); // alpha += b_i
            } else if let Some(i) = (0..3).find(|&i| !st.c[A1 + i].is_zero()) {
                // route a_i into a neighbor cell (axis 1 feeds a1 into b3;
                // axis 0 feeds a2 into b3 and a3 into b2)
                let axis = if i == 0 { 1 } else { 0 };
                st.apply(axis, true, BigInt::from(1));
                continue;
            } else if !st.c[BE].is_zero() {
                st.tau();
            } else {
                return Err(Error::Precondition("cannot reduce the zero element".into()));
            }
            continue;
        }
        // clear the three neighbors
        for i in 0..3 {
            st.euclid_neighbor(i)?;
        }
        if (0..3).any(|i| !st.c[B1 + i].is_zero()) {
            continue;
        }
        // divisibility of the far cells
        let alpha = st.c[AL].clone();
        let divides = |v: &BigInt| v.div_exact(&alpha).is_some();
        if let Some(i) = (0..3).find(|&i| !divides(&st.c[A1 + i])) {
            // pull a_i into a neighbor cell (see the axis tables)
            let axis = if i == 0 { 1 } else { 0 };
            st.apply(axis, true, BigInt::from(1));
            continue;
        }
        if !divides(&st.c[BE]) {
            // a1 += beta, making a1 an offender
            st.apply(0, true, BigInt::from(1));
            continue;
        }
        break;
    }
    if Scalar::is_negative(&st.c[AL]) {
        // tau^2 = -Id flips every coordinate
        st.tau();
        st.tau();
    }
    let out = MInt::from_coords(JordanKind::Diag3, &st.c)?;
    debug_assert!(is_reduced_shape(&out));
    Ok(DiagonalReduced {
        kind: JordanKind::Diag3,
        alpha: out.alpha.clone(),
        beta: out.beta.clone(),
        a: out.a.diag().clone(),
        witness: st.witness,
    })
}

/// Reduction Lemma I: every nonzero integral element is equivalent to a
/// diagonal reduced element under a word of elementary transformations.
/// The returned witness replays bit-exactly, and alpha = gcd of the input.
pub fn reduce_diagonal(x: &MInt) -> Result<DiagonalReduced> {
    if x.is_zero() {
        return Err(Error::Precondition("cannot reduce the zero element".into()));
    }
    if x.kind() == JordanKind::H3F {
        return Err(Error::Precondition(
            "reduction requires a split Hermitian kind or Diag3".into(),
        ));
    }
    // already reduced: idempotence with an empty witness
    if is_reduced_shape(x) {
        return Ok(DiagonalReduced {
            kind: x.kind(),
            alpha: x.alpha.clone(),
            beta: x.beta.clone(),
            a: x.a.diag().clone(),
            witness: GroupWord::identity(),
        });
    }
    if x.kind() == JordanKind::Diag3 {
        reduce_diag3(x)
    } else {
        reduce_hermitian(x)
    }
}

/// The explicit transformation of diagonal elements with zero B slot:
/// for slot s with complement {j, k},
///   beta -> beta - 2 (a_j a_k / alpha) c,
///   a_s  -> a_s + beta c - (a_j a_k / alpha) c^2,
/// realized as the word phi(c E_s) then psi(-(1/alpha)(a_k c E_j + a_j c E_k)).
/// Over Int the divisibility alpha | a_j, alpha | a_k is required.
pub fn lcomp_move<S: Scalar>(
    x: &FreudenthalElement<S>,
    slot: usize,
    c: &S,
) -> Result<(FreudenthalElement<S>, GroupWord<S>)> {
    if slot > 2 {
        return Err(Error::Precondition("slot must be 0, 1, or 2".into()));
    }
    if !x.b.is_zero() || !x.a.is_diagonal() {
        return Err(Error::Precondition(
            "lcomp needs the shape (alpha, beta, diag, 0)".into(),
        ));
    }
    if x.alpha.is_zero() {
        return Err(Error::Precondition("lcomp needs alpha != 0".into()));
    }
    let j = (slot + 1) % 3;
    let k = (slot + 2) % 3;
    let div = |num: &S| {
        num.div_exact(&x.alpha).ok_or_else(|| {
            Error::NonInvertibleDivision(format!("{num}"), format!("{}", x.alpha))
        })
    };
    let dj = div(&x.a.diag()[k].mul(c))?.neg();
    let dk = div(&x.a.diag()[j].mul(c))?.neg();
    let mut cdiag = [S::zero(), S::zero(), S::zero()];
    cdiag[slot] = c.clone();
    let mut ddiag = [S::zero(), S::zero(), S::zero()];
    ddiag[j] = dj;
    ddiag[k] = dk;
    let mut word = GroupWord::identity();
    word.push(GroupGenerator::Phi(JordanElement::diagonal(x.kind(), cdiag)));
    word.push(GroupGenerator::Psi(JordanElement::diagonal(x.kind(), ddiag)));
    let out = word.apply(x)?;
    Ok((out, word))
}

/// The orbit invariants d1..d4 (gcds of the element and of its quadratic
/// and cubic covariants, and the quartic norm), plus the finer alternative
/// quadratic invariant d2' whose invariance is empirical rather than proved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantVector {
    pub d1: BigInt,
    pub d2: BigInt,
    pub d3: BigInt,
    pub d4: BigInt,
    pub d2_alt: BigInt,
}

impl InvariantVector {
    pub fn to_json(&self) -> Value {
        json!({
            "d1": Scalar::to_json(&self.d1),
            "d2": Scalar::to_json(&self.d2),
            "d3": Scalar::to_json(&self.d3),
            "d4": Scalar::to_json(&self.d4),
            "d2_alt": Scalar::to_json(&self.d2_alt),
        })
    }
}

pub fn invariants(x: &MInt) -> InvariantVector {
    let two = BigInt::from(2);
    let d1 = gcd_slice(&x.to_coords());
    let mu = BigInt::from(3) * &x.alpha * &x.beta - x.a.trace_form(&x.b);
    let p = x.a.scale(&x.alpha).sub(&x.b.sharp());
    let r = x.b.scale(&x.beta).sub(&x.a.sharp());
    let q_op = x.q_operator();
    let mut coords = vec![mu.clone()];
    coords.extend(p.to_coords().iter().map(|v| v * &two));
    coords.extend(r.to_coords().iter().map(|v| v * &two));
    coords.extend(q_op.entries.iter().map(|v| v * &two));
    let d2 = gcd_slice(&coords);
    let mut alt = p.to_coords();
    alt.extend(r.to_coords());
    alt.extend(q_op.entries.iter().cloned());
    let d2_alt = gcd_slice(&alt);
    let d3 = gcd_slice(&x.t_xxx().to_coords());
    let d4 = x.quartic_qprime();
    InvariantVector { d1, d2, d3, d4, d2_alt }
}

/// How a projectivity verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectivityRoute {
    /// gcd T(x,x,x) = 1: projective.
    GcdOne,
    /// T(x,x,x) = 0 or gcd >= 3: not projective.
    GcdLargeOrZero,
    /// Diagonal algebra: the three associated binary quadratic forms
    /// tested for primitivity directly.
    DirectForms,
    /// gcd T(x,x,x) = 2: gcd conditions evaluated on the single diagonal
    /// reduced representative produced by the deterministic reduction.
    ReducedFallback,
}

#[derive(Debug, Clone)]
pub struct Projectivity {
    pub projective: bool,
    pub gcd_t: BigInt,
    pub route: ProjectivityRoute,
    /// True on the gcd = 2 fallback: the test used one representative; its
    /// independence from the representative is empirically supported but
    /// not proved.
    pub representative_dependent: bool,
}

impl Projectivity {
    pub fn to_json(&self) -> Value {
        json!({
            "projective": self.projective,
            "gcd_t": Scalar::to_json(&self.gcd_t),
            "route": match self.route {
                ProjectivityRoute::GcdOne => "gcd_one",
                ProjectivityRoute::GcdLargeOrZero => "gcd_large_or_zero",
                ProjectivityRoute::DirectForms => "direct_forms",
                ProjectivityRoute::ReducedFallback => "reduced_fallback",
            },
            "representative_dependent": self.representative_dependent,
        })
    }
}

/// Coefficients (as flat triples) of the three binary quadratic forms
/// associated to a diagonal-algebra element; the element is projective iff
/// all three are primitive.
pub fn diag3_associated_forms(x: &MInt) -> Result<[[BigInt; 3]; 3]> {
    if x.kind() != JordanKind::Diag3 {
        return Err(Error::KindMismatch("Diag3", x.kind().name()));
    }
    let a = x.a.diag();
    let b = x.b.diag();
    let mut out: Vec<[BigInt; 3]> = Vec::with_capacity(3);
    for i in 0..3 {
        let j = (i + 1) % 3;
        let k = (i + 2) % 3;
        let ab = &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2];
        out.push([
            &x.alpha * &a[i] - &b[j] * &b[k],
            &ab - BigInt::from(2) * &a[i] * &b[i] - &x.alpha * &x.beta,
            &x.beta * &b[i] - &a[j] * &a[k],
        ]);
    }
    Ok(out.try_into().unwrap())
}

/// Tiered projectivity test: gcd T(x,x,x) decides except at gcd = 2, where
/// the diagonal reduced representative is consulted; diagonal-algebra
/// elements are tested directly on their three associated forms.
pub fn projectivity(x: &MInt) -> Result<Projectivity> {
    let gcd_t = gcd_slice(&x.t_xxx().to_coords());
    if x.kind() == JordanKind::Diag3 {
        let forms = diag3_associated_forms(x)?;
        let projective = forms.iter().all(|f| gcd_slice(f) == BigInt::from(1));
        return Ok(Projectivity {
            projective,
            gcd_t,
            route: ProjectivityRoute::DirectForms,
            representative_dependent: false,
        });
    }
    if gcd_t == BigInt::from(1) {
        return Ok(Projectivity {
            projective: true,
            gcd_t,
            route: ProjectivityRoute::GcdOne,
            representative_dependent: false,
        });
    }
    if gcd_t.is_zero() || gcd_t >= BigInt::from(3) {
        return Ok(Projectivity {
            projective: false,
            gcd_t,
            route: ProjectivityRoute::GcdLargeOrZero,
            representative_dependent: false,
        });
    }
    // gcd = 2: test the gcd conditions on the diagonal reduced form
    let red = reduce_diagonal(x)?;
    let (alpha, beta, a) = (&red.alpha, &red.beta, &red.a);
    let projective = (0..3).all(|i| {
        let j = (i + 1) % 3;
        let k = (i + 2) % 3;
        gcd_slice(&[alpha * &a[i], alpha * beta, &a[j] * &a[k]]) == BigInt::from(1)
    });
    Ok(Projectivity {
        projective,
        gcd_t,
        route: ProjectivityRoute::ReducedFallback,
        representative_dependent: true,
    })
}

pub fn is_projective(x: &MInt) -> Result<bool> {
    Ok(projectivity(x)?.projective)
}

/// Reduction Lemma II: carry a projective element of a split Hermitian
/// kind onto (1, eps, diag(1, 1, k), 0) with eps in {0, 1}; eps and k are
/// determined by q' via 4k + eps^2 = q'(x).
pub fn projective_canonicalize(x: &MInt) -> Result<(u8, BigInt, GroupWord<BigInt>)> {
    if !JordanKind::SMITH.contains(&x.kind()) {
        return Err(Error::Precondition(
            "projective transitivity holds for the split Hermitian kinds".into(),
        ));
    }
    if !is_projective(x)? {
        return Err(Error::Precondition("element is not projective".into()));
    }
    let red = reduce_diagonal(x)?;
    if red.alpha != BigInt::from(1) {
        return Err(Error::Internal("projective element is not primitive".into()));
    }
    let mut st = RedState {
        x: red.element(),
        witness: red.witness,
        fuel: 10_000,
    };
    // keep the diagonal in Smith order throughout
    st.smith_a_slot()?;
    // Step 0: an all-zero A forces beta = ±1; seed A with beta so the
    // gcd steps below apply.
    if st.x.a.is_zero() {
        let c = JInt::diagonal_i64(st.x.kind(), [0, 0, 1]);
        st.push(GroupGenerator::Phi(c))?;
        st.smith_a_slot()?;
    }
    // Steps 1 and 2: make a1 then a2 equal to 1 with gcd-driven lcomp moves.
    for step in 0..2 {
        let a = st.x.a.diag().clone();
        let target = &a[step];
        if *target == BigInt::from(1) {
            continue;
        }
        let (out, word) = lcomp_move(&st.x, 2, &BigInt::from(1))?;
        st.x = out;
        st.witness.extend(word);
        st.smith_a_slot()?;
    }
    if st.x.a.diag()[0] != BigInt::from(1) || st.x.a.diag()[1] != BigInt::from(1) {
        return Err(Error::Internal(
            "projective canonicalization failed to reach diag(1, 1, *)".into(),
        ));
    }
    // Step 3: shift beta into {0, 1}.
    let beta = st.x.beta.clone();
    let c = beta.div_floor(&BigInt::from(2));
    if !c.is_zero() {
        let (out, word) = lcomp_move(&st.x, 2, &c)?;
        st.x = out;
        st.witness.extend(word);
    }
    let eps_int = st.x.beta.clone();
    let epsilon = if eps_int.is_zero() { 0u8 } else { 1u8 };
    if eps_int != BigInt::from(epsilon) {
        return Err(Error::Internal("beta did not land in {0, 1}".into()));
    }
    let k = st.x.a.diag()[2].clone();
    // 4k + eps^2 = q'(x)
    debug_assert_eq!(
        BigInt::from(4) * &k + BigInt::from((epsilon as i64) * (epsilon as i64)),
        x.quartic_qprime()
    );
    Ok((epsilon, k, st.witness))
}

/// Canonical orbit identifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitLabel {
    Rank0,
    Rank1 { d1: BigInt },
    Rank2 { d1: BigInt, m: BigInt },
    Projective { epsilon: u8, k: BigInt },
    Unclassified { invariants: InvariantVector, representative: Box<DiagonalReduced> },
}

impl OrbitLabel {
    pub fn to_json(&self) -> Value {
        match self {
            OrbitLabel::Rank0 => json!({ "variant": "Rank0" }),
            OrbitLabel::Rank1 { d1 } => json!({ "variant": "Rank1", "d1": Scalar::to_json(d1) }),
            OrbitLabel::Rank2 { d1, m } => json!({
                "variant": "Rank2",
                "d1": Scalar::to_json(d1),
                "m": Scalar::to_json(m),
            }),
            OrbitLabel::Projective { epsilon, k } => json!({
                "variant": "Projective",
                "epsilon": epsilon,
                "k": Scalar::to_json(k),
            }),
            OrbitLabel::Unclassified { invariants, representative } => json!({
                "variant": "Unclassified",
                "invariants": invariants.to_json(),
                "representative": representative.to_json(),
            }),
        }
    }

    /// The canonical representative element, when the label pins one down.
    pub fn representative(&self, kind: JordanKind) -> Option<MInt> {
        match self {
            OrbitLabel::Rank0 => Some(MInt::zero(kind)),
            OrbitLabel::Rank1 { d1 } => Some(FreudenthalElement {
                alpha: d1.clone(),
                beta: BigInt::from(0),
                a: JInt::zero(kind),
                b: JInt::zero(kind),
            }),
            OrbitLabel::Rank2 { d1, m } => Some(FreudenthalElement {
                alpha: d1.clone(),
                beta: BigInt::from(0),
                a: JInt::diagonal(kind, [m.clone(), BigInt::from(0), BigInt::from(0)]),
                b: JInt::zero(kind),
            }),
            OrbitLabel::Projective { epsilon, k } => Some(FreudenthalElement {
                alpha: BigInt::from(1),
                beta: BigInt::from(*epsilon as i64),
                a: JInt::diagonal(kind, [BigInt::from(1), BigInt::from(1), k.clone()]),
                b: JInt::zero(kind),
            }),
            OrbitLabel::Unclassified { .. } => None,
        }
    }
}

/// Orbit classification: rank 0/1/2 labels from the invariants (complete
/// by the degenerate-orbit theorem), projective rank 3/4 labels from q'
/// for the split Hermitian kinds, everything else labelled with its
/// invariant vector and a diagonal reduced representative.
pub fn classify_orbit(x: &MInt) -> Result<OrbitLabel> {
    match x.rank() {
        0 => Ok(OrbitLabel::Rank0),
        1 => Ok(OrbitLabel::Rank1 { d1: gcd_slice(&x.to_coords()) }),
        2 => {
            let inv = invariants(x);
            let m = Scalar::div_exact(&inv.d2, &(BigInt::from(2) * &inv.d1))
                .ok_or_else(|| Error::Internal("d2 is not divisible by 2 d1".into()))?;
            Ok(OrbitLabel::Rank2 { d1: inv.d1, m })
        }
        _ => {
            if JordanKind::SMITH.contains(&x.kind()) && is_projective(x)? {
                let qp = x.quartic_qprime();
                let eps = qp.mod_floor(&BigInt::from(4));
                let (epsilon, k) = if eps.is_zero() {
                    (0u8, Scalar::div_exact(&qp, &BigInt::from(4)).unwrap())
                } else if eps == BigInt::from(1) {
                    (
                        1u8,
                        Scalar::div_exact(&(&qp - 1), &BigInt::from(4)).unwrap(),
                    )
                } else {
                    return Err(Error::Internal("q' of an integral element must be 0 or 1 mod 4".into()));
                };
                Ok(OrbitLabel::Projective { epsilon, k })
            } else {
                Ok(OrbitLabel::Unclassified {
                    invariants: invariants(x),
                    representative: Box::new(reduce_diagonal(x)?),
                })
            }
        }
    }
}

/// true iff n is squarefree.
fn squarefree(n: &BigInt) -> bool {
    let mut m = Scalar::abs(n);
    if m.is_zero() {
        return false;
    }
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        if m.div_exact(&p).is_some() {
            m = m.div_exact(&p).unwrap();
            if m.div_exact(&p).is_some() {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Fundamental discriminants: squarefree n = 1 (mod 4), or n = 4k with k
/// squarefree and k = 2 or 3 (mod 4); n = 1 is included.
pub fn is_fundamental_discriminant(n: &BigInt) -> bool {
    if n.is_zero() {
        return false;
    }
    let four = BigInt::from(4);
    let r = n.mod_floor(&four);
    if r == BigInt::from(1) {
        return squarefree(n);
    }
    if r.is_zero() {
        let k = Scalar::div_exact(n, &four).unwrap();
        let kr = k.mod_floor(&four);
        return (kr == BigInt::from(2) || kr == BigInt::from(3)) && squarefree(&k);
    }
    false
}

/// Field-case canonical forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldCanonicalForm {
    /// (1, 0, 0, 0)
    Rank1,
    /// (1, 0, diag(1,0,0), 0)
    Rank2,
    /// (1, 0, diag(1,1,0), 0)
    Rank3,
    /// (1, 0, diag(1,1,k), 0) with k = -q(x)/8 = q'(x)/4
    Rank4 { k: BigRational },
}

impl FieldCanonicalForm {
    pub fn element(&self, kind: JordanKind) -> MRat {
        let one = <BigRational as Scalar>::one();
        let zero = <BigRational as Scalar>::zero();
        let a = match self {
            FieldCanonicalForm::Rank1 => [zero.clone(), zero.clone(), zero.clone()],
            FieldCanonicalForm::Rank2 => [one.clone(), zero.clone(), zero.clone()],
            FieldCanonicalForm::Rank3 => [one.clone(), one.clone(), zero.clone()],
            FieldCanonicalForm::Rank4 { k } => [one.clone(), one.clone(), k.clone()],
        };
        FreudenthalElement {
            alpha: one,
            beta: zero,
            a: JordanElement::diagonal(kind, a),
            b: JordanElement::zero(kind),
        }
    }
}

struct FieldState {
    x: MRat,
    witness: GroupWord<BigRational>,
}

impl FieldState {
    fn push(&mut self, g: GroupGenerator<BigRational>) -> Result<()> {
        self.x = g.apply(&self.x)?;
        self.witness.push(g);
        Ok(())
    }

    /// A rank <= 1 element C with (B, C) != 0, scaled so alpha + (B,C) = 1.
    fn rank1_pairing(&self, target: &JordanElement<BigRational>) -> Result<JordanElement<BigRational>> {
        let kind = self.x.kind();
        let alg = kind.off_algebra();
        // diagonal candidates
        for i in 0..3 {
            if !target.diag()[i].is_zero() {
                let gamma = (<BigRational as Scalar>::one().sub(&self.x.alpha))
                    .div_exact(&target.diag()[i])
                    .expect("nonzero pairing");
                let mut d = [
                    <BigRational as Scalar>::zero(),
                    <BigRational as Scalar>::zero(),
                    <BigRational as Scalar>::zero(),
                ];
                d[i] = gamma;
                return Ok(JordanElement::diagonal(kind, d));
            }
        }
        // off-slot candidates: an isotropic basis unit pairs with a single
        // coordinate of the slot entry
        for slot in 0..3 {
            let w = &target.off()[slot];
            if let Some(t) = w.coords().iter().position(|v| !v.is_zero()) {
                let (u, sign) = crate::structure::norm_pair(alg, t);
                let pairing = w.coord(t).mul(&BigRational::from_integer(sign.into()));
                let gamma = (<BigRational as Scalar>::one().sub(&self.x.alpha))
                    .div_exact(&pairing)
                    .expect("nonzero pairing");
                let mut coords = vec![<BigRational as Scalar>::zero(); alg.dim()];
                coords[u] = gamma;
                let c = crate::composition::CompositionElement::new(alg, coords)?;
                let mut out = JordanElement::zero(kind);
                out.off_mut()[slot] = c;
                debug_assert!(out.rank() <= 1);
                return Ok(out);
            }
        }
        Err(Error::Internal("pairing element not found for nonzero target".into()))
    }

    /// Apply T(s) with s the field diagonalization witness of A.
    fn diagonalize_a(&mut self) -> Result<()> {
        let (_, w) = diagonalize_field(&self.x.a)?;
        if !w.moves().is_empty() {
            self.push(GroupGenerator::Struct(w))?;
        }
        Ok(())
    }

    fn lcomp(&mut self, slot: usize, c: &BigRational) -> Result<()> {
        let (out, word) = lcomp_move(&self.x, slot, c)?;
        self.x = out;
        self.witness.extend(word);
        Ok(())
    }
}

/// Field-case canonicalization: carry a nonzero element over the rationals
/// onto the canonical form of its rank.
pub fn field_canonicalize(x: &MRat) -> Result<(FieldCanonicalForm, GroupWord<BigRational>)> {
    if !JordanKind::SMITH.contains(&x.kind()) {
        return Err(Error::Precondition(
            "field canonicalization requires a split Hermitian kind".into(),
        ));
    }
    if x.is_zero() {
        return Err(Error::Precondition("cannot canonicalize the zero element".into()));
    }
    let one = <BigRational as Scalar>::one();
    let two = BigRational::from_integer(2.into());
    let mut st = FieldState { x: x.clone(), witness: GroupWord::identity() };

    // Stage 1: reach (1, beta, A, 0).
    if st.x.b.is_zero() {
        if !st.x.a.is_zero() {
            st.push(GroupGenerator::Tau)?;
        } else {
            if st.x.alpha.is_zero() {
                st.push(GroupGenerator::Tau)?;
            }
            st.push(GroupGenerator::Psi(JordanElement::unit(st.x.kind())))?;
        }
    }
    if st.x.alpha != one {
        let c = st.rank1_pairing(&st.x.b.clone())?;
        debug_assert!(c.rank() <= 1);
        st.push(GroupGenerator::Phi(c))?;
        debug_assert_eq!(st.x.alpha, one);
    }
    let d = st.x.b.neg();
    st.push(GroupGenerator::Psi(d))?;
    debug_assert!(st.x.b.is_zero());

    // Stage 2: the rank decides the canonical form.
    let rank = x.rank();
    match rank {
        1 => {
            debug_assert!(st.x.a.is_zero() && st.x.beta.is_zero());
        }
        2 => {
            st.diagonalize_a()?;
        }
        3 | 4 => {
            if st.x.a.rank() <= 1 && !st.x.beta.is_zero() {
                // lift the diagonal rank: diag(e, 0, 0) with e in {0, 1}
                st.diagonalize_a()?;
                let inv_beta = one.div_exact(&st.x.beta).expect("nonzero beta");
                st.lcomp(1, &inv_beta)?;
                if st.x.a.diag()[0].is_zero() {
                    st.lcomp(0, &inv_beta)?;
                }
            }
            st.diagonalize_a()?;
            if !st.x.beta.is_zero() {
                let half_beta = st.x.beta.div_exact(&two).expect("rational half");
                st.lcomp(2, &half_beta)?;
                debug_assert!(st.x.beta.is_zero());
            }
            st.diagonalize_a()?;
        }
        _ => return Err(Error::Internal("rank 0 element slipped past the zero check".into())),
    }
    let form = match rank {
        1 => FieldCanonicalForm::Rank1,
        2 => FieldCanonicalForm::Rank2,
        3 => FieldCanonicalForm::Rank3,
        _ => FieldCanonicalForm::Rank4 { k: st.x.a.diag()[2].clone() },
    };
    if st.x != form.element(x.kind()) {
        return Err(Error::Internal("canonical form not reached".into()));
    }
    Ok((form, st.witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_element, random_word};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn check_reduced(x: &MInt, red: &DiagonalReduced) {
        // witness replays bit-exactly onto the claimed form
        let replayed = red.witness.apply(x).unwrap();
        assert_eq!(replayed, red.element());
        // divisibility contract
        assert!(!Scalar::is_negative(&red.alpha) && !red.alpha.is_zero());
        assert!(red.beta.div_exact(&red.alpha).is_some());
        for ai in &red.a {
            assert!(ai.div_exact(&red.alpha).is_some());
        }
        // alpha = gcd of the source element
        assert_eq!(red.alpha, gcd_slice(&x.to_coords()));
        // forms and invariants agree between source and target
        let y = red.element();
        assert_eq!(y.quartic_qprime(), x.quartic_qprime());
        assert_eq!(y.rank(), x.rank());
        assert_eq!(invariants(&y).d1, invariants(x).d1);
        assert_eq!(invariants(&y).d2, invariants(x).d2);
        assert_eq!(invariants(&y).d3, invariants(x).d3);
    }

    #[test]
    fn reduce_already_reduced_is_identity() {
        for kind in JordanKind::INTEGRAL {
            let x = MInt::diagonal_i64(kind, 2, 4, [2, 6, -8]);
            let red = reduce_diagonal(&x).unwrap();
            assert!(red.witness.is_empty());
            assert_eq!(red.element(), x);
        }
    }

    #[test]
    fn reduce_pure_b_slot() {
        for kind in JordanKind::INTEGRAL {
            let x = FreudenthalElement {
                alpha: BigInt::from(0),
                beta: BigInt::from(0),
                a: JInt::zero(kind),
                b: JInt::unit(kind),
            };
            let red = reduce_diagonal(&x).unwrap();
            check_reduced(&x, &red);
            assert_eq!(red.alpha, BigInt::from(1));
        }
    }

    #[test]
    fn reduce_random_all_kinds() {
        let mut rng = ChaCha8Rng::seed_from_u64(60);
        for kind in JordanKind::INTEGRAL {
            for _ in 0..120 {
                let x = random_element(&mut rng, kind, 6);
                if x.is_zero() {
                    continue;
                }
                let red = reduce_diagonal(&x).unwrap();
                check_reduced(&x, &red);
            }
        }
    }

    #[test]
    fn reduce_word_images() {
        // elements produced by random words from canonical forms reduce
        // soundly even with large coordinates
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for kind in JordanKind::INTEGRAL {
            for _ in 0..25 {
                let x0 = MInt::diagonal_i64(kind, 1, 1, [1, 1, rng.gen_range(-4..4)]);
                let w = random_word(&mut rng, kind, 12, 2);
                let x = w.apply(&x0).unwrap();
                let red = reduce_diagonal(&x).unwrap();
                check_reduced(&x, &red);
                assert_eq!(red.alpha, BigInt::from(1));
            }
        }
    }

    #[test]
    fn reduce_rejects_zero_and_h3f() {
        assert!(reduce_diagonal(&MInt::zero(JordanKind::H3B)).is_err());
        let x = MInt::diagonal_i64(JordanKind::H3F, 1, 0, [1, 2, 3]);
        assert!(reduce_diagonal(&x).is_err());
    }

    #[test]
    fn lcomp_examples() {
        // slot 3 (index 2), x = (1, 2, diag(1,1,2), 0), c = 1 -> (1, 0, diag(1,1,3), 0)
        let x = MInt::diagonal_i64(JordanKind::H3B, 1, 2, [1, 1, 2]);
        let (y, word) = lcomp_move(&x, 2, &BigInt::from(1)).unwrap();
        assert_eq!(y, MInt::diagonal_i64(JordanKind::H3B, 1, 0, [1, 1, 3]));
        assert_eq!(word.apply(&x).unwrap(), y);
        // c = 0 leaves the element unchanged
        let (y0, _) = lcomp_move(&x, 2, &BigInt::from(0)).unwrap();
        assert_eq!(y0, x);
        // q' unchanged
        assert_eq!(y.quartic_qprime(), x.quartic_qprime());
    }

    #[test]
    fn lcomp_closed_form_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(62);
        for kind in JordanKind::INTEGRAL {
            for _ in 0..60 {
                let alpha = BigInt::from(*[1i64, 2, 3, -2].iter().nth(rng.gen_range(0..4)).unwrap());
                let m: [i64; 3] = [0; 3].map(|_| rng.gen_range(-4i64..=4));
                let a = [m[0] * 2, m[1] * 2, m[2] * 2]; // divisible by any alpha above? use alpha * m
                let _ = a;
                let diag = m.map(|v| &alpha * BigInt::from(v));
                let beta = BigInt::from(rng.gen_range(-5i64..=5));
                let x = FreudenthalElement {
                    alpha: alpha.clone(),
                    beta: beta.clone(),
                    a: JInt::diagonal(kind, diag.clone()),
                    b: JInt::zero(kind),
                };
                let slot = rng.gen_range(0..3);
                let c = BigInt::from(rng.gen_range(-3i64..=3));
                let (y, word) = lcomp_move(&x, slot, &c).unwrap();
                let j = (slot + 1) % 3;
                let k = (slot + 2) % 3;
                let quot = Scalar::div_exact(&(&diag[j] * &diag[k]), &alpha).unwrap();
                let mut expect_diag = diag.clone();
                expect_diag[slot] =
                    &diag[slot] + &beta * &c - &quot * &c * &c;
                let expect = FreudenthalElement {
                    alpha: alpha.clone(),
                    beta: &beta - BigInt::from(2) * &quot * &c,
                    a: JInt::diagonal(kind, expect_diag),
                    b: JInt::zero(kind),
                };
                assert_eq!(y, expect);
                assert_eq!(word.apply(&x).unwrap(), y);
                assert_eq!(y.quartic_qprime(), x.quartic_qprime());
            }
        }
    }

    #[test]
    fn invariants_examples() {
        // rank-2 representative (k, 0, diag(m,0,0), 0): d1 = k, d2 = 2 k m
        let x = MInt::diagonal_i64(JordanKind::H3H, 2, 0, [6, 0, 0]);
        let inv = invariants(&x);
        assert_eq!(inv.d1, BigInt::from(2));
        assert_eq!(inv.d2, BigInt::from(24));
        assert_eq!(inv.d3, BigInt::from(0));
        assert_eq!(inv.d4, BigInt::from(0));
        // (1, 0, 0, 0)
        let x = MInt::diagonal_i64(JordanKind::H3B, 1, 0, [0, 0, 0]);
        let inv = invariants(&x);
        assert_eq!(inv.d1, BigInt::from(1));
        assert_eq!(inv.d2, BigInt::from(0));
        assert_eq!(inv.d3, BigInt::from(0));
        assert_eq!(inv.d4, BigInt::from(0));
        // reduced element: d2 = gcd(alpha beta, 2 alpha A, 2 A#)
        let x = MInt::diagonal_i64(JordanKind::H3O, 2, 6, [4, 2, 8]);
        let inv = invariants(&x);
        let expect = gcd_slice(&[
            BigInt::from(12),
            BigInt::from(16),
            BigInt::from(8),
            BigInt::from(32),
            BigInt::from(2 * 2 * 8),
            BigInt::from(2 * 8 * 4),
            BigInt::from(2 * 4 * 2),
        ]);
        assert_eq!(inv.d2, expect);
    }

    #[test]
    fn invariants_are_word_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(63);
        for kind in JordanKind::INTEGRAL {
            for _ in 0..40 {
                let x = random_element(&mut rng, kind, 4);
                let inv = invariants(&x);
                let w = random_word(&mut rng, kind, 8, 2);
                let y = w.apply(&x).unwrap();
                let inv_y = invariants(&y);
                assert_eq!(inv.d1, inv_y.d1);
                assert_eq!(inv.d2, inv_y.d2);
                assert_eq!(inv.d3, inv_y.d3);
                assert_eq!(inv.d4, inv_y.d4);
                // the finer quadratic invariant, empirically
                assert_eq!(inv.d2_alt, inv_y.d2_alt);
            }
        }
    }

    #[test]
    fn d2_alt_separates_where_di_do_not() {
        // (1, 2, diag(1,0,0), 0) and (1, 2, diag(2,0,0), 0) share d1..d4 but
        // differ in d2'.
        let x = MInt::diagonal_i64(JordanKind::H3B, 1, 2, [1, 0, 0]);
        let y = MInt::diagonal_i64(JordanKind::H3B, 1, 2, [2, 0, 0]);
        let (ix, iy) = (invariants(&x), invariants(&y));
        assert_eq!(ix.d1, iy.d1);
        assert_eq!(ix.d2, iy.d2);
        assert_eq!(ix.d3, iy.d3);
        assert_eq!(ix.d4, iy.d4);
        assert_ne!(ix.d2_alt, iy.d2_alt);
    }

    #[test]
    fn projectivity_known_pair() {
        // x1 projective, x2 not, both with gcd T = 2 -- in every integral kind
        for kind in JordanKind::INTEGRAL {
            let x1 = MInt::diagonal_i64(kind, 1, 2, [1, 1, 2]);
            let x2 = MInt::diagonal_i64(kind, 1, 2, [1, 2, 2]);
            let p1 = projectivity(&x1).unwrap();
            let p2 = projectivity(&x2).unwrap();
            assert_eq!(p1.gcd_t, BigInt::from(2), "{kind:?}");
            assert_eq!(p2.gcd_t, BigInt::from(2), "{kind:?}");
            assert!(p1.projective, "{kind:?}");
            assert!(!p2.projective, "{kind:?}");
        }
    }

    #[test]
    fn projectivity_examples() {
        // (1, 0, unit, 0): gcd T = 2, projective via the fallback
        for kind in JordanKind::SMITH {
            let x = FreudenthalElement {
                alpha: BigInt::from(1),
                beta: BigInt::from(0),
                a: JInt::unit(kind),
                b: JInt::zero(kind),
            };
            let p = projectivity(&x).unwrap();
            assert_eq!(p.gcd_t, BigInt::from(2));
            assert_eq!(p.route, ProjectivityRoute::ReducedFallback);
            assert!(p.projective);
            assert!(p.representative_dependent);
        }
        // non-primitive elements are never projective
        for kind in JordanKind::INTEGRAL {
            let x = MInt::diagonal_i64(kind, 2, 2, [2, 2, 4]);
            assert!(!is_projective(&x).unwrap());
        }
        // q' = 5 elements have gcd T = 1
        let x = MInt::diagonal_i64(JordanKind::H3O, 1, 1, [1, 1, 1]);
        let p = projectivity(&x).unwrap();
        assert_eq!(p.route, ProjectivityRoute::GcdOne);
        assert!(p.projective);
    }

    #[test]
    fn projectivity_invariant_under_words() {
        let mut rng = ChaCha8Rng::seed_from_u64(64);
        for kind in JordanKind::INTEGRAL {
            for _ in 0..25 {
                let x = random_element(&mut rng, kind, 2);
                if x.is_zero() {
                    continue;
                }
                let before = is_projective(&x).unwrap();
                let w = random_word(&mut rng, kind, 6, 1);
                let after = is_projective(&w.apply(&x).unwrap()).unwrap();
                assert_eq!(before, after);
            }
        }
    }

    #[test]
    fn canonicalize_examples() {
        // q' = 5: (eps, k) = (1, 1)
        let x = MInt::diagonal_i64(JordanKind::H3B, 1, 1, [1, 1, 1]);
        let (eps, k, w) = projective_canonicalize(&x).unwrap();
        assert_eq!((eps, k.clone()), (1, BigInt::from(1)));
        assert_eq!(
            w.apply(&x).unwrap(),
            MInt::diagonal_i64(JordanKind::H3B, 1, 1, [1, 1, 1])
        );
        // q' = 12 input (1, 2, diag(1,1,2), 0) -> (0, 3)
        let x = MInt::diagonal_i64(JordanKind::H3H, 1, 2, [1, 1, 2]);
        let (eps, k, w) = projective_canonicalize(&x).unwrap();
        assert_eq!((eps, k.clone()), (0, BigInt::from(3)));
        assert_eq!(
            w.apply(&x).unwrap(),
            MInt::diagonal_i64(JordanKind::H3H, 1, 0, [1, 1, 3])
        );
        // q' = 0 projective rank-3: (0, 0)
        let x = MInt::diagonal_i64(JordanKind::H3O, 1, 0, [1, 1, 0]);
        let (eps, k, _) = projective_canonicalize(&x).unwrap();
        assert_eq!((eps, k), (0, BigInt::from(0)));
        // non-projective input rejected
        let x = MInt::diagonal_i64(JordanKind::H3B, 1, 2, [1, 2, 2]);
        assert!(projective_canonicalize(&x).is_err());
        // the diagonal algebra is outside the transitivity theorem
        let x = MInt::diagonal_i64(JordanKind::Diag3, 1, 1, [1, 1, 1]);
        assert!(projective_canonicalize(&x).is_err());
    }

    #[test]
    fn canonicalize_random_word_images() {
        let mut rng = ChaCha8Rng::seed_from_u64(65);
        for kind in JordanKind::SMITH {
            for _ in 0..15 {
                let eps0 = rng.gen_range(0..2i64);
                let k0 = rng.gen_range(-5i64..=5);
                let x0 = MInt::diagonal_i64(kind, 1, eps0, [1, 1, k0]);
                let w = random_word(&mut rng, kind, 10, 2);
                let x = w.apply(&x0).unwrap();
                if x.rank() < 3 {
                    continue; // k = 0 and eps = 0 gives a rank-2 form
                }
                let (eps, k, wit) = projective_canonicalize(&x).unwrap();
                assert_eq!(eps as i64, eps0);
                assert_eq!(k, BigInt::from(k0));
                assert_eq!(
                    wit.apply(&x).unwrap(),
                    MInt::diagonal_i64(kind, 1, eps0, [1, 1, k0])
                );
            }
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify_orbit(&MInt::diagonal_i64(JordanKind::H3B, 3, 0, [0, 0, 0])).unwrap(),
            OrbitLabel::Rank1 { d1: BigInt::from(3) }
        );
        assert_eq!(
            classify_orbit(&MInt::diagonal_i64(JordanKind::H3O, 2, 0, [6, 0, 0])).unwrap(),
            OrbitLabel::Rank2 { d1: BigInt::from(2), m: BigInt::from(6) }
        );
        assert_eq!(
            classify_orbit(&MInt::diagonal_i64(JordanKind::H3B, 1, 1, [1, 1, 1])).unwrap(),
            OrbitLabel::Projective { epsilon: 1, k: BigInt::from(1) }
        );
        assert_eq!(classify_orbit(&MInt::zero(JordanKind::Diag3)).unwrap(), OrbitLabel::Rank0);
        // a non-projective rank-4 element gets the invariant-vector label
        let x = MInt::diagonal_i64(JordanKind::H3B, 1, 2, [1, 2, 2]);
        match classify_orbit(&x).unwrap() {
            OrbitLabel::Unclassified { invariants: inv, representative } => {
                assert_eq!(inv.d4, x.quartic_qprime());
                assert_eq!(representative.witness.apply(&x).unwrap(), representative.element());
            }
            other => panic!("expected Unclassified, got {other:?}"),
        }
    }

    #[test]
    fn classify_is_word_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(66);
        for kind in JordanKind::INTEGRAL {
            for _ in 0..20 {
                let x = random_element(&mut rng, kind, 2);
                let lx = classify_orbit(&x).unwrap();
                let w = random_word(&mut rng, kind, 6, 1);
                let ly = classify_orbit(&w.apply(&x).unwrap()).unwrap();
                match (&lx, &ly) {
                    (OrbitLabel::Unclassified { invariants: a, .. },
                     OrbitLabel::Unclassified { invariants: b, .. }) => {
                        assert_eq!((&a.d1, &a.d2, &a.d3, &a.d4), (&b.d1, &b.d2, &b.d3, &b.d4));
                    }
                    _ => assert_eq!(lx, ly),
                }
            }
        }
    }

    #[test]
    fn fundamental_discriminants() {
        let f = |n: i64| is_fundamental_discriminant(&BigInt::from(n));
        // 12 = 4 * 3 with 3 squarefree and 3 mod 4: fundamental (the
        // discriminant of the real quadratic field of 3)
        for n in [5, 8, 12, 13, 1, -3, -4, -8, -7, 17, 21, 24, 28] {
            assert!(f(n), "{n} is fundamental");
        }
        for n in [0, 2, 3, 4, 9, -9, 16, 25, -12, 20, 45] {
            assert!(!f(n), "{n} is not fundamental");
        }
    }

    #[test]
    fn field_canonicalize_examples() {
        let to_rat = |x: &MInt| x.map(|v| BigRational::from_integer(v.clone()));
        // (1, 0, diag(1,1,5), 0) is already canonical with k = 5
        let x = to_rat(&MInt::diagonal_i64(JordanKind::H3B, 1, 0, [1, 1, 5]));
        let (form, w) = field_canonicalize(&x).unwrap();
        assert_eq!(form, FieldCanonicalForm::Rank4 { k: BigRational::from_integer(5.into()) });
        assert_eq!(w.apply(&x).unwrap(), form.element(JordanKind::H3B));
        assert_eq!(x.quartic_q(), BigRational::from_integer((-40).into()));
        // (0, 0, C, 0) with C of rank 1 has module rank 1
        let mut c = JordanElement::<BigRational>::zero(JordanKind::H3H);
        c.diag_mut()[1] = <BigRational as Scalar>::one();
        let x = FreudenthalElement {
            alpha: BigRational::from_integer(0.into()),
            beta: BigRational::from_integer(0.into()),
            a: c,
            b: JordanElement::zero(JordanKind::H3H),
        };
        assert_eq!(x.rank(), 1);
        let (form, w) = field_canonicalize(&x).unwrap();
        assert_eq!(form, FieldCanonicalForm::Rank1);
        assert_eq!(w.apply(&x).unwrap(), form.element(JordanKind::H3H));
    }

    #[test]
    fn field_canonicalize_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(67);
        for kind in JordanKind::SMITH {
            for _ in 0..40 {
                let x = MRat::random(&mut rng, kind, 3);
                if x.is_zero() {
                    continue;
                }
                let (form, w) = field_canonicalize(&x).unwrap();
                let y = w.apply(&x).unwrap();
                assert_eq!(y, form.element(kind));
                assert_eq!(y.rank(), x.rank());
                if let FieldCanonicalForm::Rank4 { k } = &form {
                    // k = -q/8 = q'/4
                    let four = BigRational::from_integer(4.into());
                    assert_eq!(k * four, x.quartic_qprime());
                }
            }
        }
    }

    #[test]
    fn diag3_forms_match_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(68);
        for _ in 0..50 {
            let x = random_element(&mut rng, JordanKind::Diag3, 5);
            let forms = diag3_associated_forms(&x).unwrap();
            // disc(form_i) = q'(x) for each i
            for f in &forms {
                let disc = &f[1] * &f[1] - BigInt::from(4) * &f[0] * &f[2];
                assert_eq!(disc, x.quartic_qprime());
            }
        }
    }
}
