//! Discretized variational solver for the exit decay rates.
//!
//! Measures are restricted to atoms on a time grid, candidate exit times
//! are enumerated over the same grid, and the inner constrained problems
//! are solved numerically without using the single-atom structure of the
//! closed forms. It serves as an independent reference for [`crate::decay`].

use nalgebra::{Cholesky, DMatrix, DVector};

use crate::decay::ExitEvent;
use crate::error::{Error, Result};
use crate::kernels::{factor_psd, gram, JitterPolicy, KernelSpec, TimeGrid};
use crate::rates::PerturbationModel;
use crate::scalar::Scalar;
use crate::scalelaw::{v_const, ScaleLaw};

/// Gradient-norm target of the reweighting iteration.
pub const GRADIENT_TOL: f64 = 1e-10;
pub const MAX_REWEIGHT_ITER: usize = 10_000;

/// A decay-rate problem restricted to a time grid.
#[derive(Debug, Clone)]
pub struct DiscretizedProblem<T: Scalar> {
    grid: TimeGrid<T>,
    kernels: Vec<KernelSpec<T>>,
    /// Jittered Gram matrices, one per component.
    grams: Vec<DMatrix<T>>,
    factors: Vec<Cholesky<T, nalgebra::Dyn>>,
    jitters: Vec<T>,
    exit: ExitEvent<T>,
    model: PerturbationModel<T>,
}

impl<T: Scalar> DiscretizedProblem<T> {
    pub fn new(
        grid: TimeGrid<T>,
        kernels: Vec<KernelSpec<T>>,
        exit: ExitEvent<T>,
        model: PerturbationModel<T>,
        jitter: &JitterPolicy,
    ) -> Result<Self> {
        let p = exit.dim();
        if grid.len() < 2 {
            return Err(Error::config("grid", "the oracle needs at least 2 grid times"));
        }
        if grid.contains_origin() {
            return Err(Error::config("grid", "t = 0 is singular and must be excluded"));
        }
        if grid.horizon() != exit.horizon() {
            return Err(Error::config("grid", "grid and exit horizons differ"));
        }
        if kernels.len() != p {
            return Err(Error::Usage(format!("{} kernels for a {p}-component exit", kernels.len())));
        }
        model.validate(p)?;
        if let PerturbationModel::Hadamard(laws) = &model {
            if let Some(l) = laws.iter().find(|l| !(l.theta() > T::lit(2.0))) {
                return Err(Error::Precondition(format!(
                    "the independent-scale model needs θ > 2, got {}",
                    l.theta()
                )));
            }
        }
        let mut grams = Vec::with_capacity(p);
        let mut factors = Vec::with_capacity(p);
        let mut jitters = Vec::with_capacity(p);
        for k in &kernels {
            let mut g = gram(k, &grid);
            let f = factor_psd(&g, jitter)?;
            if f.jitter > T::zero() {
                let add = f.jitter * g.diagonal().sum() / T::lit(g.nrows() as f64);
                for i in 0..g.nrows() {
                    g[(i, i)] += add;
                }
            }
            let ch = Cholesky::new(g.clone()).ok_or_else(|| {
                Error::Numerical("jittered Gram matrix is not positive definite".into())
            })?;
            grams.push(g);
            factors.push(ch);
            jitters.push(f.jitter);
        }
        Ok(DiscretizedProblem {
            grid,
            kernels,
            grams,
            factors,
            jitters,
            exit,
            model,
        })
    }

    /// Uniform grid `T/m, …, T` with the default jitter policy.
    pub fn uniform(
        m: usize,
        kernels: Vec<KernelSpec<T>>,
        exit: ExitEvent<T>,
        model: PerturbationModel<T>,
    ) -> Result<Self> {
        let grid = TimeGrid::uniform(exit.horizon(), m)?;
        Self::new(grid, kernels, exit, model, &JitterPolicy::default())
    }

    pub fn grid(&self) -> &TimeGrid<T> {
        &self.grid
    }

    pub fn kernels(&self) -> &[KernelSpec<T>] {
        &self.kernels
    }

    pub fn exit(&self) -> &ExitEvent<T> {
        &self.exit
    }

    pub fn model(&self) -> &PerturbationModel<T> {
        &self.model
    }

    /// Relative jitter applied to each Gram matrix.
    pub fn jitters(&self) -> &[T] {
        &self.jitters
    }

    fn m(&self) -> usize {
        self.grid.len()
    }

    fn law(&self, i: usize) -> &ScaleLaw<T> {
        match &self.model {
            PerturbationModel::Shared(l) => l,
            PerturbationModel::Hadamard(laws) => &laws[i],
        }
    }
}

/// Minimizer found by the oracle.
#[derive(Debug, Clone)]
pub struct OracleSolution<T: Scalar> {
    pub w: T,
    /// One exit time for a halfspace, one per component for a quadrant.
    pub t_star: Vec<T>,
    pub t_index: Vec<usize>,
    /// Atom weights on the grid, one vector per component.
    pub coefficients: Vec<DVector<T>>,
    /// Largest exit-constraint violation at the reported times.
    pub constraint_residual: T,
    /// Projected gradient norm of the inner problem, relative to the
    /// gradient size.
    pub gradient_norm: T,
    /// Smallest share of `Σ|c|` carried by a single grid point, over
    /// components with nonzero weights.
    pub concentration: T,
}

fn powered<T: Scalar>(law: &ScaleLaw<T>, q: T) -> T {
    if q <= T::zero() {
        return T::zero();
    }
    v_const(law) * (T::lit(0.5) * q).powf(law.norm_exponent())
}

fn quad_form<T: Scalar>(k: &DMatrix<T>, c: &DVector<T>) -> T {
    c.dot(&(k * c))
}

/// Solves `min ½ Σ_i c_iᵀ K_i c_i` subject to `Σ_i a_{ri}ᵀ c_i = b_r` for
/// each constraint row `r`, through the full saddle-point system.
fn solve_kkt<T: Scalar>(
    grams: &[&DMatrix<T>],
    rows: &[Vec<Option<DVector<T>>>],
    rhs: &[T],
) -> Result<Vec<DVector<T>>> {
    let m: usize = grams.iter().map(|g| g.nrows()).sum();
    let n = m + rows.len();
    let mut a = DMatrix::zeros(n, n);
    let mut off = 0;
    let mut offsets = Vec::with_capacity(grams.len());
    for g in grams {
        a.view_mut((off, off), (g.nrows(), g.ncols())).copy_from(g);
        offsets.push(off);
        off += g.nrows();
    }
    let mut b = DVector::zeros(n);
    for (r, row) in rows.iter().enumerate() {
        for (i, col) in row.iter().enumerate() {
            if let Some(col) = col {
                for (k, &v) in col.iter().enumerate() {
                    a[(offsets[i] + k, m + r)] = v;
                    a[(m + r, offsets[i] + k)] = v;
                }
            }
        }
        b[m + r] = rhs[r];
    }
    let sol = a
        .lu()
        .solve(&b)
        .ok_or_else(|| Error::Numerical("saddle-point system is singular".into()))?;
    if sol.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numerical("saddle-point solve produced non-finite values".into()));
    }
    Ok(grams
        .iter()
        .zip(&offsets)
        .map(|(g, &o)| sol.rows(o, g.nrows()).into_owned())
        .collect())
}

fn concentration<T: Scalar>(coefs: &[DVector<T>]) -> T {
    let mut worst = T::one();
    for c in coefs {
        let total = c.iter().fold(T::zero(), |a, v| a + v.abs());
        if total > T::zero() {
            let top = c.iter().fold(T::zero(), |a, v| a.max(v.abs()));
            worst = worst.min(top / total);
        }
    }
    worst
}

/// Halfspace constraint row of component `i` at grid index `j`:
/// `ξ_i (K_i c_i)(t_j)`.
fn halfspace_rows<T: Scalar>(prob: &DiscretizedProblem<T>, xi: &[T], j: usize) -> Vec<Option<DVector<T>>> {
    prob.grams
        .iter()
        .zip(xi)
        .map(|(g, &x)| {
            if x == T::zero() {
                None
            } else {
                Some(g.column(j).into_owned() * x)
            }
        })
        .collect()
}

/// Decay rate of a halfspace exit on the grid.
pub fn oracle_halfspace<T: Scalar>(prob: &DiscretizedProblem<T>) -> Result<OracleSolution<T>> {
    let ExitEvent::Halfspace(exit) = &prob.exit else {
        return Err(Error::Usage("oracle_halfspace needs a halfspace exit".into()));
    };
    let pts = prob.grid.points();
    let mut best: Option<(T, usize, Vec<DVector<T>>, T)> = None;
    for (j, &t) in pts.iter().enumerate() {
        let r = exit.margin(t);
        let rows = halfspace_rows(prob, exit.xi(), j);
        let (value, coefs, grad) = match &prob.model {
            PerturbationModel::Shared(law) => {
                let grams: Vec<&DMatrix<T>> = prob.grams.iter().collect();
                let coefs = solve_kkt(&grams, &[rows], &[r])?;
                let q = coefs
                    .iter()
                    .zip(&prob.grams)
                    .fold(T::zero(), |a, (c, g)| a + quad_form(g, c));
                (powered(law, q), coefs, T::zero())
            }
            PerturbationModel::Hadamard(_) => {
                let (value, coefs, grad) = reweighted_halfspace(prob, &rows, r).map_err(|e| match e {
                    Error::Numerical(msg) => Error::Numerical(format!("grid time {t}: {msg}")),
                    other => other,
                })?;
                (value, coefs, grad)
            }
        };
        if best.as_ref().is_none_or(|b| value < b.0) {
            best = Some((value, j, coefs, grad));
        }
    }
    let (w, j, coefficients, gradient_norm) = best.expect("grid has at least two points");
    let t = pts[j];
    let lhs = halfspace_rows(prob, exit.xi(), j)
        .iter()
        .zip(&coefficients)
        .fold(T::zero(), |a, (row, c)| match row {
            Some(row) => a + row.dot(c),
            None => a,
        });
    Ok(OracleSolution {
        w,
        t_star: vec![t],
        t_index: vec![j],
        constraint_residual: (lhs - exit.margin(t)).abs(),
        gradient_norm,
        concentration: concentration(&coefficients),
        coefficients,
    })
}

/// Minimizes `Σ_i v_i(½ c_iᵀK_ic_i)^{r_i}` subject to `Σ_i a_iᵀ c_i = r` by
/// iteratively reweighted quadratic programs.
///
/// With weights `ω_i` fixed the problem is the weighted QP
/// `min Σ ω_i ½ c_iᵀK_ic_i`, solved through the Schur complement of its
/// saddle-point system: `c_i = μ K_i⁻¹a_i/ω_i`. The weights are then reset
/// to the derivative `ω_i = v_i r_i (½q_i)^{r_i−1}` of the outer powers.
/// Starts from equal weights; components without a constraint row stay zero.
fn reweighted_halfspace<T: Scalar>(
    prob: &DiscretizedProblem<T>,
    rows: &[Option<DVector<T>>],
    r: T,
) -> Result<(T, Vec<DVector<T>>, T)> {
    let m = prob.m();
    let active: Vec<usize> = (0..rows.len()).filter(|&i| rows[i].is_some()).collect();
    let mut u = Vec::with_capacity(active.len());
    let mut au = Vec::with_capacity(active.len());
    let mut ku = Vec::with_capacity(active.len());
    let mut aa = Vec::with_capacity(active.len());
    for &i in &active {
        let a = rows[i].as_ref().expect("active row");
        let ui = prob.factors[i].solve(a);
        au.push(a.dot(&ui));
        ku.push(quad_form(&prob.grams[i], &ui));
        aa.push(a.dot(a));
        u.push(ui);
    }
    let half = T::lit(0.5);
    let derivative = |i: usize, q: T| {
        let law = prob.law(i);
        let e = law.norm_exponent();
        v_const(law) * e * (half * q).powf(e - T::one())
    };
    let mut omega = vec![T::one(); active.len()];
    let mut grad = T::infinity();
    let mut mu = T::zero();
    for _ in 0..MAX_REWEIGHT_ITER {
        let denom = active
            .iter()
            .enumerate()
            .fold(T::zero(), |acc, (k, _)| acc + au[k] / omega[k]);
        mu = r / denom;
        // gradient of the objective at c_i = μ u_i/ω_i is β_i a_i with
        // β_i = ω_i(c)·μ/ω_i, since K_i u_i = a_i
        let beta: Vec<T> = active
            .iter()
            .enumerate()
            .map(|(k, &i)| {
                let s = mu / omega[k];
                derivative(i, s * s * ku[k]) * s
            })
            .collect();
        let norm_a = aa.iter().fold(T::zero(), |a, &v| a + v);
        let proj = beta
            .iter()
            .zip(&aa)
            .fold(T::zero(), |a, (&b, &n)| a + b * n)
            / norm_a;
        let (num, den) = beta.iter().zip(&aa).fold((T::zero(), T::zero()), |(x, y), (&b, &n)| {
            (x + (b - proj) * (b - proj) * n, y + b * b * n)
        });
        grad = (num / den.max(T::epsilon())).sqrt();
        if grad <= T::lit(GRADIENT_TOL) {
            break;
        }
        for (k, &i) in active.iter().enumerate() {
            let s = mu / omega[k];
            omega[k] = derivative(i, s * s * ku[k]);
        }
    }
    if !(grad <= T::lit(GRADIENT_TOL)) {
        return Err(Error::Numerical(format!(
            "reweighting stalled at gradient norm {grad} after {MAX_REWEIGHT_ITER} iterations"
        )));
    }
    let mut coefs = vec![DVector::zeros(m); rows.len()];
    let mut value = T::zero();
    for (k, &i) in active.iter().enumerate() {
        let c = &u[k] * (mu / omega[k]);
        value += powered(prob.law(i), quad_form(&prob.grams[i], &c));
        coefs[i] = c;
    }
    // recompute the stationarity residual from the returned weights
    let grads: Vec<DVector<T>> = active
        .iter()
        .map(|&i| {
            let c = &coefs[i];
            let kc = &prob.grams[i] * c;
            kc * derivative(i, quad_form(&prob.grams[i], c))
        })
        .collect();
    let (mut gn, mut ga, mut aa_sum) = (T::zero(), T::zero(), T::zero());
    for (k, &i) in active.iter().enumerate() {
        let a = rows[i].as_ref().expect("active row");
        gn += grads[k].dot(&grads[k]);
        ga += grads[k].dot(a);
        aa_sum += a.dot(a);
    }
    let lambda = ga / aa_sum;
    let mut res = T::zero();
    for (k, &i) in active.iter().enumerate() {
        let a = rows[i].as_ref().expect("active row");
        let d = &grads[k] - a * lambda;
        res += d.dot(&d);
    }
    Ok((value, coefs, (res / gn.max(T::epsilon())).sqrt()))
}

/// Decay rate of a quadrant exit on the grid.
///
/// Each component's exit time is searched separately (the objective is a
/// monotone function of per-component minimal norms); the coefficients are
/// then obtained from one joint saddle-point solve with all `p`
/// constraints.
pub fn oracle_quadrant<T: Scalar>(prob: &DiscretizedProblem<T>) -> Result<OracleSolution<T>> {
    let ExitEvent::Quadrant(exit) = &prob.exit else {
        return Err(Error::Usage("oracle_quadrant needs a quadrant exit".into()));
    };
    let pts = prob.grid.points();
    let p = exit.dim();
    let mut t_index = Vec::with_capacity(p);
    for i in 0..p {
        let g = &prob.grams[i];
        let mut best: Option<(T, usize)> = None;
        for (j, &t) in pts.iter().enumerate() {
            let row = vec![Some(g.column(j).into_owned())];
            let c = solve_kkt(&[g], &[row], &[exit.margin(i, t)])?;
            let q = quad_form(g, &c[0]);
            if best.is_none_or(|b| q < b.0) {
                best = Some((q, j));
            }
        }
        t_index.push(best.expect("grid has at least two points").1);
    }
    let grams: Vec<&DMatrix<T>> = prob.grams.iter().collect();
    let rows: Vec<Vec<Option<DVector<T>>>> = (0..p)
        .map(|r| {
            (0..p)
                .map(|i| (i == r).then(|| prob.grams[i].column(t_index[i]).into_owned()))
                .collect()
        })
        .collect();
    let rhs: Vec<T> = (0..p).map(|i| exit.margin(i, pts[t_index[i]])).collect();
    let coefficients = solve_kkt(&grams, &rows, &rhs)?;
    let norms: Vec<T> = coefficients
        .iter()
        .zip(&prob.grams)
        .map(|(c, g)| quad_form(g, c))
        .collect();
    let w = match &prob.model {
        PerturbationModel::Shared(law) => powered(law, norms.iter().fold(T::zero(), |a, &q| a + q)),
        PerturbationModel::Hadamard(laws) => laws
            .iter()
            .zip(&norms)
            .fold(T::zero(), |a, (l, &q)| a + powered(l, q)),
    };
    let residual = (0..p).fold(T::zero(), |acc, i| {
        let lhs = (&prob.grams[i] * &coefficients[i])[t_index[i]];
        acc.max((lhs - rhs[i]).abs())
    });
    Ok(OracleSolution {
        w,
        t_star: t_index.iter().map(|&j| pts[j]).collect(),
        t_index,
        constraint_residual: residual,
        gradient_norm: T::zero(),
        concentration: concentration(&coefficients),
        coefficients,
    })
}

/// Dispatches on the exit type.
pub fn solve<T: Scalar>(prob: &DiscretizedProblem<T>) -> Result<OracleSolution<T>> {
    match prob.exit {
        ExitEvent::Halfspace(_) => oracle_halfspace(prob),
        ExitEvent::Quadrant(_) => oracle_quadrant(prob),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decay::{self, ExitHalfspace, ExitQuadrant};
    use crate::optimize::OptimizerConfig;
    use crate::shift::Shift;

    fn law(d: f64, th: f64) -> ScaleLaw<f64> {
        ScaleLaw::new(d, th).unwrap()
    }

    fn bm(p: usize) -> Vec<KernelSpec<f64>> {
        vec![KernelSpec::fbm(1.0).unwrap(); p]
    }

    fn half(xi: Vec<f64>, x: f64, shift: Shift<f64>) -> ExitEvent<f64> {
        ExitEvent::Halfspace(ExitHalfspace::new(xi, x, shift, 1.0).unwrap())
    }

    fn quad(levels: Vec<f64>) -> ExitEvent<f64> {
        let p = levels.len();
        ExitEvent::Quadrant(ExitQuadrant::new(levels, Shift::zero(p), 1.0).unwrap())
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn brownian_halfspace() {
        let prob = DiscretizedProblem::uniform(
            40,
            bm(1),
            half(vec![1.0], 1.0, Shift::zero(1)),
            PerturbationModel::Shared(law(1.0, 2.0)),
        )
        .unwrap();
        let s = oracle_halfspace(&prob).unwrap();
        assert!(rel(s.w, 2f64.sqrt()) < 1e-4, "{}", s.w);
        assert_eq!(s.t_star, vec![1.0]);
        assert!(s.constraint_residual <= 1e-10);
        assert!(s.concentration >= 1.0 - 1e-6, "{}", s.concentration);
        let top = s.coefficients[0].iamax();
        assert_eq!(top, s.t_index[0]);
    }

    #[test]
    fn symmetric_quadrant() {
        let prob = DiscretizedProblem::uniform(
            40,
            bm(2),
            quad(vec![1.0, 1.0]),
            PerturbationModel::Shared(law(1.0, 2.0)),
        )
        .unwrap();
        let s = oracle_quadrant(&prob).unwrap();
        assert!(rel(s.w, 2.0) < 1e-4);
        assert!(s.constraint_residual <= 1e-10);
    }

    #[test]
    fn one_component_quadrant_equals_halfspace() {
        let model = PerturbationModel::Hadamard(vec![law(1.5, 3.0)]);
        let ks = vec![KernelSpec::fbm(0.7).unwrap()];
        let h = DiscretizedProblem::uniform(30, ks.clone(), half(vec![1.0], 1.2, Shift::zero(1)), model.clone())
            .unwrap();
        let q = DiscretizedProblem::uniform(30, ks, quad(vec![1.2]), model).unwrap();
        let (a, b) = (oracle_halfspace(&h).unwrap().w, oracle_quadrant(&q).unwrap().w);
        assert!((a - b).abs() <= 1e-10 * b, "{a} vs {b}");
    }

    #[test]
    fn heterogeneous_quadrant_matches_closed_form() {
        let laws = vec![law(1.0, 3.0), law(2.0, 5.0)];
        let exit = quad(vec![1.0, 1.0]);
        let prob = DiscretizedProblem::uniform(40, bm(2), exit.clone(), PerturbationModel::Hadamard(laws.clone()))
            .unwrap();
        let s = oracle_quadrant(&prob).unwrap();
        let ExitEvent::Quadrant(e) = &exit else { unreachable!() };
        let cf = decay::decay_quadrant_indep(e, &bm(2), &laws, &OptimizerConfig::default()).unwrap();
        assert!(rel(s.w, cf.w) < 1e-4);
    }

    #[test]
    fn independent_halfspace_converges_to_closed_form() {
        let ks = vec![KernelSpec::fbm(0.6).unwrap(), KernelSpec::fbm(1.4).unwrap(), KernelSpec::fbm(1.0).unwrap()];
        let shift = Shift::Affine {
            intercept: vec![0.1, -0.2, 0.0],
            slope: vec![-0.5, 0.2, -1.0],
        };
        let exit = half(vec![1.0, 0.5, 2.0], 1.5, shift);
        let l = law(1.3, 3.0);
        let prob = DiscretizedProblem::uniform(40, ks.clone(), exit.clone(), PerturbationModel::Hadamard(vec![l; 3]))
            .unwrap();
        let s = oracle_halfspace(&prob).unwrap();
        assert!(s.gradient_norm <= 1e-10, "{}", s.gradient_norm);
        assert!(s.constraint_residual <= 1e-10);
        assert!(s.concentration >= 1.0 - 1e-6);
        let ExitEvent::Halfspace(e) = &exit else { unreachable!() };
        let cf = decay::decay_halfspace_indep(e, &ks, &l, &OptimizerConfig::default()).unwrap();
        assert!(cf.w <= s.w * (1.0 + 1e-4));
        assert!(rel(s.w, cf.w) < 5e-3, "{} vs {}", s.w, cf.w);
    }

    #[test]
    fn zero_direction_components_stay_empty() {
        let prob = DiscretizedProblem::uniform(
            20,
            bm(2),
            half(vec![1.0, 0.0], 1.0, Shift::zero(2)),
            PerturbationModel::Hadamard(vec![law(1.0, 4.0); 2]),
        )
        .unwrap();
        let s = oracle_halfspace(&prob).unwrap();
        assert!(s.coefficients[1].iter().all(|&v| v == 0.0));
        assert!(rel(s.w, 1.190_550_788_976_149_6) < 1e-9);
    }

    #[test]
    fn refinement_never_increases_the_rate() {
        let shift = Shift::Affine {
            intercept: vec![0.0, 0.1],
            slope: vec![-1.5, -0.4],
        };
        let exit = half(vec![1.0, 1.0], 1.0, shift);
        let ks = vec![KernelSpec::fbm(0.6).unwrap(), KernelSpec::fbm(1.4).unwrap()];
        let mut last = f64::INFINITY;
        for m in [20, 40, 80] {
            let prob = DiscretizedProblem::uniform(m, ks.clone(), exit.clone(), PerturbationModel::Shared(law(1.0, 3.0)))
                .unwrap();
            let w = oracle_halfspace(&prob).unwrap().w;
            assert!(w <= last * (1.0 + 1e-12), "m={m}: {w} > {last}");
            last = w;
        }
    }

    #[test]
    fn problem_validation() {
        let exit = half(vec![1.0], 1.0, Shift::zero(1));
        let with_origin = TimeGrid::uniform_with_origin(1.0, 10).unwrap();
        let r = DiscretizedProblem::new(
            with_origin,
            bm(1),
            exit.clone(),
            PerturbationModel::Shared(law(1.0, 2.0)),
            &JitterPolicy::default(),
        );
        assert!(r.is_err());
        let r = DiscretizedProblem::uniform(1, bm(1), exit.clone(), PerturbationModel::Shared(law(1.0, 2.0)));
        assert!(r.is_err());
        let r = DiscretizedProblem::uniform(10, bm(1), exit.clone(), PerturbationModel::Hadamard(vec![law(1.0, 2.0)]));
        assert!(matches!(r, Err(Error::Precondition(_))));
        let r = DiscretizedProblem::uniform(10, bm(2), exit, PerturbationModel::Shared(law(1.0, 2.0)));
        assert!(matches!(r, Err(Error::Usage(_))));
    }
}
