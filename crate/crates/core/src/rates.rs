//! Rate functions on paths of the form
//! `z_i(u) = Σ_j c_ij k_ii(u, t_ij) + b̂_i(u)`, i.e. kernel sections against
//! finite atomic measures, shifted by `b̂`.

use crate::error::{Error, Result};
use crate::kernels::KernelSpec;
use crate::scalar::Scalar;
use crate::scalelaw::{v_const, ScaleLaw};
use crate::shift::Shift;

/// Tolerated negativity of a quadratic form, relative to `Σ|c_j c_l k_jl|`.
pub const NEGATIVE_NORM_TOL: f64 = 1e-10;

/// Finite atomic measure `Σ_j c_j δ_{t_j}` on `(0, T]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomicComponent<T> {
    atoms: Vec<(T, T)>,
}

impl<T: Scalar> AtomicComponent<T> {
    /// Builds the measure from `(time, weight)` pairs. Atoms sharing a time
    /// are merged by summing their weights.
    pub fn new(atoms: Vec<(T, T)>, horizon: T) -> Result<Self> {
        for &(t, c) in &atoms {
            if !(t > T::zero() && t <= horizon) {
                return Err(Error::config("atom time", format!("{t} is outside (0, {horizon}]")));
            }
            if !c.is_finite() {
                return Err(Error::config("atom weight", "must be finite"));
            }
        }
        let mut atoms = atoms;
        atoms.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite times"));
        let mut merged: Vec<(T, T)> = Vec::with_capacity(atoms.len());
        for (t, c) in atoms {
            match merged.last_mut() {
                Some(last) if last.0 == t => last.1 += c,
                _ => merged.push((t, c)),
            }
        }
        Ok(AtomicComponent { atoms: merged })
    }

    pub fn empty() -> Self {
        AtomicComponent { atoms: Vec::new() }
    }

    pub fn single(t: T, c: T, horizon: T) -> Result<Self> {
        Self::new(vec![(t, c)], horizon)
    }

    pub fn atoms(&self) -> &[(T, T)] {
        &self.atoms
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Same atoms with every weight multiplied by `s`.
    pub fn scaled(&self, s: T) -> Self {
        AtomicComponent {
            atoms: self.atoms.iter().map(|&(t, c)| (t, c * s)).collect(),
        }
    }

    /// `Σ_j c_j k(u, t_j)`.
    pub fn section(&self, kernel: &KernelSpec<T>, u: T) -> T {
        self.atoms
            .iter()
            .fold(T::zero(), |acc, &(t, c)| acc + c * kernel.eval(u, t))
    }
}

/// A path in the dense set: one atomic measure per component plus the shift.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomicPath<T> {
    components: Vec<AtomicComponent<T>>,
    kernels: Vec<KernelSpec<T>>,
    shift: Shift<T>,
}

impl<T: Scalar> AtomicPath<T> {
    pub fn new(
        components: Vec<AtomicComponent<T>>,
        kernels: Vec<KernelSpec<T>>,
        shift: Shift<T>,
    ) -> Result<Self> {
        let p = components.len();
        if p == 0 {
            return Err(Error::config("components", "need at least one component"));
        }
        if kernels.len() != p || shift.dim() != p {
            return Err(Error::config(
                "components",
                format!(
                    "{p} components but {} kernels and a {}-dimensional shift",
                    kernels.len(),
                    shift.dim()
                ),
            ));
        }
        shift.validate()?;
        Ok(AtomicPath {
            components,
            kernels,
            shift,
        })
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[AtomicComponent<T>] {
        &self.components
    }

    pub fn kernels(&self) -> &[KernelSpec<T>] {
        &self.kernels
    }

    pub fn shift(&self) -> &Shift<T> {
        &self.shift
    }

    /// `‖z_i − b̂_i‖²` for every component.
    pub fn norms_sq(&self) -> Result<Vec<T>> {
        self.components
            .iter()
            .zip(&self.kernels)
            .map(|(c, k)| rkhs_norm_sq(k, c))
            .collect()
    }
}

/// How the random scale multiplies the Gaussian components.
#[derive(Debug, Clone, PartialEq)]
pub enum PerturbationModel<T> {
    /// One scalar scale shared by all components: `Z = A·X + b̂`.
    Shared(ScaleLaw<T>),
    /// Independent per-component scales: `Z = A∘X + b̂`.
    Hadamard(Vec<ScaleLaw<T>>),
}

impl<T: Scalar> PerturbationModel<T> {
    pub fn validate(&self, p: usize) -> Result<()> {
        if let PerturbationModel::Hadamard(laws) = self {
            if laws.len() != p {
                return Err(Error::config(
                    "laws",
                    format!("per-component model needs {p} scale laws, got {}", laws.len()),
                ));
            }
        }
        Ok(())
    }
}

/// A rate value in `[0, +∞]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub enum ExtRate<T> {
    Finite(T),
    Infinite,
}

impl<T: Scalar> ExtRate<T> {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRate::Finite(_))
    }

    pub fn finite(self) -> Option<T> {
        match self {
            ExtRate::Finite(v) => Some(v),
            ExtRate::Infinite => None,
        }
    }
}

/// `‖z − b̂‖² = Σ_{j,l} c_j c_l k(t_j, t_l)`.
///
/// Small negative round-off is clamped to zero; anything below
/// `−NEGATIVE_NORM_TOL` relative signals a broken kernel.
pub fn rkhs_norm_sq<T: Scalar>(kernel: &KernelSpec<T>, comp: &AtomicComponent<T>) -> Result<T> {
    let atoms = comp.atoms();
    let mut q = T::zero();
    let mut scale = T::zero();
    for (j, &(tj, cj)) in atoms.iter().enumerate() {
        let d = cj * cj * kernel.variance(tj);
        q += d;
        scale += d.abs();
        for &(tl, cl) in &atoms[..j] {
            let v = T::lit(2.0) * cj * cl * kernel.eval(tj, tl);
            q += v;
            scale += v.abs();
        }
    }
    if q < T::zero() {
        if q < -T::lit(NEGATIVE_NORM_TOL) * scale {
            return Err(Error::Numerical(format!(
                "quadratic form is negative ({q}); the kernel Gram is not PSD"
            )));
        }
        return Ok(T::zero());
    }
    Ok(q)
}

/// `z(u)` for every component.
pub fn eval_path<T: Scalar>(path: &AtomicPath<T>, u: T) -> Vec<T> {
    path.components
        .iter()
        .zip(&path.kernels)
        .enumerate()
        .map(|(i, (c, k))| c.section(k, u) + path.shift.component(i, u))
        .collect()
}

/// Conditional rate of one component given the scale `a`:
/// `‖z − b̂‖²/(2a²)` for `a > 0`; for `a = 0` it is 0 when `z = b̂` and
/// `+∞` otherwise.
pub fn conditional_rate<T: Scalar>(
    comp: &AtomicComponent<T>,
    kernel: &KernelSpec<T>,
    a: T,
) -> Result<ExtRate<T>> {
    if !(a >= T::zero()) {
        return Err(Error::Domain(format!("scale must be ≥ 0, got {a}")));
    }
    let q = rkhs_norm_sq(kernel, comp)?;
    if a > T::zero() {
        return Ok(ExtRate::Finite(q / (T::lit(2.0) * a * a)));
    }
    Ok(if q == T::zero() {
        ExtRate::Finite(T::zero())
    } else {
        ExtRate::Infinite
    })
}

fn powered<T: Scalar>(law: &ScaleLaw<T>, half_norm: T) -> T {
    if half_norm == T::zero() {
        return T::zero();
    }
    v_const(law) * half_norm.powf(law.norm_exponent())
}

/// Shared-scale rate `v(d,θ)·(½ Σ_i ‖z_i − b̂_i‖²)^{θ/(θ+2)}`.
pub fn rate_equal<T: Scalar>(path: &AtomicPath<T>, law: &ScaleLaw<T>) -> Result<T> {
    let total = path.norms_sq()?.into_iter().fold(T::zero(), |a, q| a + q);
    Ok(powered(law, T::lit(0.5) * total))
}

/// Per-component-scale rate `Σ_i v(d_i,θ_i)·(½‖z_i − b̂_i‖²)^{θ_i/(θ_i+2)}`.
pub fn rate_indep<T: Scalar>(path: &AtomicPath<T>, laws: &[ScaleLaw<T>]) -> Result<T> {
    if laws.len() != path.dim() {
        return Err(Error::Usage(format!(
            "{} scale laws for a {}-component path",
            laws.len(),
            path.dim()
        )));
    }
    let norms = path.norms_sq()?;
    Ok(norms
        .into_iter()
        .zip(laws)
        .fold(T::zero(), |acc, (q, law)| acc + powered(law, T::lit(0.5) * q)))
}

/// Rate of `path` under either perturbation model.
pub fn rate<T: Scalar>(path: &AtomicPath<T>, model: &PerturbationModel<T>) -> Result<T> {
    match model {
        PerturbationModel::Shared(law) => rate_equal(path, law),
        PerturbationModel::Hadamard(laws) => rate_indep(path, laws),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bm() -> KernelSpec<f64> {
        KernelSpec::fbm(1.0).unwrap()
    }

    fn law(d: f64, th: f64) -> ScaleLaw<f64> {
        ScaleLaw::new(d, th).unwrap()
    }

    fn single(t: f64, c: f64) -> AtomicComponent<f64> {
        AtomicComponent::single(t, c, 1.0).unwrap()
    }

    fn path(comps: Vec<AtomicComponent<f64>>, alpha: f64) -> AtomicPath<f64> {
        let p = comps.len();
        AtomicPath::new(comps, vec![KernelSpec::fbm(alpha).unwrap(); p], Shift::zero(p)).unwrap()
    }

    #[test]
    fn norm_examples() {
        let k = KernelSpec::fbm(0.6).unwrap();
        let v = rkhs_norm_sq(&k, &AtomicComponent::single(0.7, -2.0, 1.0).unwrap()).unwrap();
        assert!((v - 4.0 * 0.7f64.powf(0.6)).abs() < 1e-15);
        assert_eq!(rkhs_norm_sq(&k, &AtomicComponent::empty()).unwrap(), 0.0);
        let two = AtomicComponent::new(vec![(0.5, 1.0), (1.0, -1.0)], 1.0).unwrap();
        assert!((rkhs_norm_sq(&bm(), &two).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn atoms_are_merged_and_validated() {
        let c = AtomicComponent::new(vec![(0.5, 1.0), (0.2, 3.0), (0.5, 2.0)], 1.0).unwrap();
        assert_eq!(c.atoms(), &[(0.2, 3.0), (0.5, 3.0)]);
        assert!(AtomicComponent::new(vec![(0.0, 1.0)], 1.0).is_err());
        assert!(AtomicComponent::new(vec![(1.5, 1.0)], 1.0).is_err());
        assert!(AtomicComponent::new(vec![(0.5, f64::NAN)], 1.0).is_err());
    }

    #[test]
    fn path_shape_is_checked() {
        let r = AtomicPath::new(vec![single(1.0, 1.0)], vec![bm(), bm()], Shift::zero(1));
        assert!(r.is_err());
        let r = AtomicPath::new(vec![single(1.0, 1.0)], vec![bm()], Shift::zero(2));
        assert!(r.is_err());
    }

    #[test]
    fn eval_path_examples() {
        let z = AtomicPath::new(
            vec![AtomicComponent::empty()],
            vec![bm()],
            Shift::Affine {
                intercept: vec![0.2],
                slope: vec![1.0],
            },
        )
        .unwrap();
        assert_eq!(eval_path(&z, 0.5), vec![0.7]);
        let z = path(vec![single(0.8, 3.0)], 1.0);
        for u in [0.0, 0.1, 0.4, 0.8] {
            assert!((eval_path(&z, u)[0] - 3.0 * u).abs() < 1e-15);
        }
        let z = path(vec![single(1.0, 1.0)], 0.5);
        assert!((eval_path(&z, 0.25)[0] - 0.316_987_298_107_780_7).abs() < 1e-15);
    }

    #[test]
    fn conditional_rate_branches() {
        let k = bm();
        assert_eq!(
            conditional_rate(&AtomicComponent::empty(), &k, 0.0).unwrap(),
            ExtRate::Finite(0.0)
        );
        assert_eq!(conditional_rate(&single(1.0, 1.0), &k, 0.0).unwrap(), ExtRate::Infinite);
        assert_eq!(
            conditional_rate(&single(1.0, 1.0), &k, 2.0).unwrap(),
            ExtRate::Finite(0.125)
        );
        assert!(conditional_rate(&single(1.0, 1.0), &k, -1.0).is_err());
        assert!(ExtRate::Finite(1e300) < ExtRate::Infinite);
    }

    #[test]
    fn rate_equal_examples() {
        let l = law(1.0, 2.0);
        let empty = path(vec![AtomicComponent::empty(), AtomicComponent::empty()], 1.0);
        assert_eq!(rate_equal(&empty, &l).unwrap(), 0.0);
        let one = path(vec![single(1.0, 1.0)], 1.0);
        assert!((rate_equal(&one, &l).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        let profile = crate::scalelaw::scalar_profile(&l, 1.0).unwrap();
        assert!((rate_equal(&one, &l).unwrap() - profile).abs() < 1e-12);
        let two = path(vec![single(1.0, 1.0), single(1.0, 1.0)], 1.0);
        assert!((rate_equal(&two, &l).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn rate_indep_examples() {
        let l4 = law(1.0, 4.0);
        let empty = path(vec![AtomicComponent::empty(), AtomicComponent::empty()], 1.0);
        assert_eq!(rate_indep(&empty, &[l4, l4]).unwrap(), 0.0);
        let two = path(vec![single(1.0, 1.0), single(1.0, 1.0)], 1.0);
        let v = rate_indep(&two, &[l4, l4]).unwrap();
        assert!((v - 2.381_101_577_952_299).abs() < 1e-12, "{v}");
        assert!(rate_indep(&two, &[l4]).is_err());
        let one = path(vec![single(0.3, -1.7)], 0.6);
        assert!((rate_indep(&one, &[l4]).unwrap() - rate_equal(&one, &l4).unwrap()).abs() < 1e-15);
    }

    fn arb_component() -> impl Strategy<Value = AtomicComponent<f64>> {
        proptest::collection::vec((0.01f64..=1.0, -3.0f64..3.0), 0..5)
            .prop_map(|atoms| AtomicComponent::new(atoms, 1.0).unwrap())
    }

    proptest! {
        #[test]
        fn norm_is_quadratic(c in arb_component(), s in -5.0f64..5.0, a in 0.2f64..1.8) {
            let k = KernelSpec::fbm(a).unwrap();
            let q = rkhs_norm_sq(&k, &c).unwrap();
            let qs = rkhs_norm_sq(&k, &c.scaled(s)).unwrap();
            prop_assert!((qs - s * s * q).abs() <= 1e-10 * (1.0 + s * s * q));
        }

        #[test]
        fn shared_rate_never_exceeds_per_component_rate(
            comps in proptest::collection::vec(arb_component(), 1..4),
            th in 2.01f64..8.0,
            d in 0.1f64..5.0,
            a in 0.3f64..1.7,
        ) {
            let p = comps.len();
            let active = comps.iter().filter(|c| rkhs_norm_sq(&KernelSpec::fbm(a).unwrap(), c).unwrap() > 1e-6).count();
            let z = path(comps, a);
            let l = law(d, th);
            let eq = rate_equal(&z, &l).unwrap();
            let ind = rate_indep(&z, &vec![l; p]).unwrap();
            prop_assert!(eq <= ind + 1e-12);
            if active <= 1 {
                prop_assert!((eq - ind).abs() <= 1e-12 * (1.0 + ind));
            } else {
                prop_assert!(eq < ind);
            }
        }

        #[test]
        fn power_sum_inequality(
            xs in proptest::collection::vec(prop_oneof![Just(0.0f64), 0.01f64..10.0], 1..6),
            r_low in 0.05f64..0.95,
            r_high in 1.05f64..4.0,
        ) {
            let total: f64 = xs.iter().sum();
            let nonzero = xs.iter().filter(|&&x| x != 0.0).count();
            let lhs_low: f64 = xs.iter().map(|x| x.powf(r_low)).sum();
            let lhs_high: f64 = xs.iter().map(|x| x.powf(r_high)).sum();
            let (rhs_low, rhs_high) = (total.powf(r_low), total.powf(r_high));
            let tol = 1e-12 * (1.0 + rhs_low.max(rhs_high));
            prop_assert!(lhs_low >= rhs_low - tol);
            prop_assert!(lhs_high <= rhs_high + tol);
            if nonzero <= 1 {
                prop_assert!((lhs_low - rhs_low).abs() <= tol && (lhs_high - rhs_high).abs() <= tol);
            } else {
                prop_assert!(lhs_low > rhs_low && lhs_high < rhs_high);
            }
        }

        #[test]
        fn conditional_rate_non_increasing_in_scale(c in arb_component(), a1 in 1e-3f64..5.0, da in 0.0f64..5.0) {
            let k = bm();
            prop_assume!(rkhs_norm_sq(&k, &c).unwrap() > 0.0);
            let r1 = conditional_rate(&c, &k, a1).unwrap();
            let r2 = conditional_rate(&c, &k, a1 + da).unwrap();
            prop_assert!(r2 <= r1);
        }

        #[test]
        fn rates_ignore_atom_splitting(
            atoms in proptest::collection::vec((1u32..=20, -2.0f64..2.0), 1..6),
            split in 0.0f64..1.0,
        ) {
            let atoms: Vec<(f64, f64)> = atoms.into_iter().map(|(t, c)| (t as f64 / 20.0, c)).collect();
            let mut split_atoms = Vec::new();
            for &(t, c) in &atoms {
                split_atoms.push((t, c * split));
                split_atoms.push((t, c * (1.0 - split)));
            }
            let a = path(vec![AtomicComponent::new(atoms, 1.0).unwrap()], 0.8);
            let b = path(vec![AtomicComponent::new(split_atoms, 1.0).unwrap()], 0.8);
            let l = law(1.3, 3.0);
            let (ra, rb) = (rate_equal(&a, &l).unwrap(), rate_equal(&b, &l).unwrap());
            prop_assert!((ra - rb).abs() <= 1e-12 * (1.0 + ra));
            let (ia, ib) = (rate_indep(&a, &[l]).unwrap(), rate_indep(&b, &[l]).unwrap());
            prop_assert!((ia - ib).abs() <= 1e-12 * (1.0 + ia));
        }
    }
}
