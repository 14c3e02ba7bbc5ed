//! The sum-of-ratios program bounding `P(y | do(x))` from the observational
//! joint and a known context marginal:
//!
//! ```text
//! min / max   sum_c a_c P(c) / b_c
//! s.t.        P(c) >= b_c >= a_c >= 0
//!             a_c <= P(x, y),        b_c <= P(x)
//!             a_c >= P(x, y) + P(c) - 1,  b_c >= P(x) + P(c) - 1
//!             sum_c a_c = P(x, y),   sum_c b_c = P(x)
//! ```
//!
//! Here `b_c` plays the role of `P(x, c)` and `a_c` of `P(x, y, c)`. For a
//! fixed `b` the objective is linear in `a` and is solved exactly by a greedy
//! fill; the outer problem over the `b` polytope is searched globally.
//!
//! A term with `b_c = 0` is valued by its limit as `b_c -> 0+`: any ratio
//! `a_c / b_c` in `[0, 1]` is approachable there, so it contributes `P(c)`
//! when maximizing and `0` when minimizing. When `P(c) = 0` forces
//! `b_c = 0` both readings give `0`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{check_probability_vector, JointActionRewardTable};
use crate::scalar::Scalar;
use crate::Sense;

/// Best value found so far with its `b`.
type Best<T> = Option<(T, Vec<T>)>;

/// One instance of the bound program for a fixed `(arm, level)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionalProgram<T> {
    joint_mass: T,
    arm_mass: T,
    context_marginal: Vec<T>,
    a_lo: Vec<T>,
    b_lo: Vec<T>,
    b_hi: Vec<T>,
}

/// Exact optimizer of the inner problem over `a` for a fixed `b`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Allocation<T> {
    pub a: Vec<T>,
    pub value: T,
}

/// Tuning for the outer search over `b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolverOptions {
    /// Step of the exhaustive grid used when `|C| <= 3`.
    pub grid_resolution: f64,
    /// Step of the refinement grid around the grid incumbents.
    pub refine_resolution: f64,
    /// Number of local-descent starts when `|C| >= 4`.
    pub starts: usize,
    /// Step of the coarse cross-check grid when `|C| = 4`.
    pub cross_check_resolution: f64,
    pub seed: u64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            grid_resolution: 1e-3,
            refine_resolution: 1e-4,
            starts: 64,
            cross_check_resolution: 2e-2,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverDiagnostics {
    pub method: &'static str,
    pub contexts: usize,
    pub evaluations: u64,
    pub starts: usize,
    pub grid_resolution: Option<f64>,
    pub refine_resolution: Option<f64>,
}

/// Optimal value with the achieving `(a, b)` certificate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProgramSolution<T> {
    pub value: T,
    pub a: Vec<T>,
    pub b: Vec<T>,
    pub diagnostics: SolverDiagnostics,
}

impl<T: Scalar> FractionalProgram<T> {
    pub fn new(
        joint: &JointActionRewardTable<T>,
        context_marginal: &[T],
        arm: usize,
        level: usize,
    ) -> Result<Self> {
        joint.check_cell(arm, level)?;
        if joint.arm_marginal(arm) <= T::zero_tol() {
            return Err(Error::UnidentifiableArm(arm));
        }
        Self::from_parts(
            joint.prob(arm, level),
            joint.arm_marginal(arm),
            context_marginal.to_vec(),
        )
    }

    /// Builds the program from `P(x, y)`, `P(x)` and `P(C)` directly.
    pub fn from_parts(joint_mass: T, arm_mass: T, context_marginal: Vec<T>) -> Result<Self> {
        if context_marginal.is_empty() {
            return Err(Error::InvalidArgument("context marginal is empty".into()));
        }
        check_probability_vector(&context_marginal, "context marginal")?;
        if arm_mass <= T::zero_tol() {
            return Err(Error::Infeasible("P(x) = 0".into()));
        }
        let tol = T::feas_tol();
        if joint_mass < -tol || joint_mass > arm_mass + tol || arm_mass > T::one() + tol {
            return Err(Error::Infeasible(format!(
                "need 0 <= P(x, y) <= P(x) <= 1, got P(x, y) = {joint_mass}, P(x) = {arm_mass}"
            )));
        }
        let joint_mass = joint_mass.max(T::zero()).min(arm_mass);
        let zero = T::zero();
        let one = T::one();
        let a_lo: Vec<T> = context_marginal
            .iter()
            .map(|&pc| (joint_mass + pc - one).max(zero))
            .collect();
        let b_lo: Vec<T> = context_marginal
            .iter()
            .map(|&pc| (arm_mass + pc - one).max(zero))
            .collect();
        let b_hi: Vec<T> = context_marginal
            .iter()
            .map(|&pc| pc.min(arm_mass))
            .collect();
        let lo_sum: T = b_lo.iter().copied().sum();
        let hi_sum: T = b_hi.iter().copied().sum();
        if lo_sum > arm_mass + tol || hi_sum < arm_mass - tol {
            return Err(Error::Infeasible(format!(
                "no b satisfies the box with sum P(x) = {arm_mass}"
            )));
        }
        Ok(Self {
            joint_mass,
            arm_mass,
            context_marginal,
            a_lo,
            b_lo,
            b_hi,
        })
    }

    pub fn num_contexts(&self) -> usize {
        self.context_marginal.len()
    }

    pub fn joint_mass(&self) -> T {
        self.joint_mass
    }

    pub fn arm_mass(&self) -> T {
        self.arm_mass
    }

    pub fn context_marginal(&self) -> &[T] {
        &self.context_marginal
    }

    /// Box `[lo, hi]` for `b_c`.
    pub fn b_box(&self, c: usize) -> (T, T) {
        (self.b_lo[c], self.b_hi[c])
    }

    /// Lower limit `max(0, P(x, y) + P(c) - 1)` for `a_c`.
    pub fn a_floor(&self, c: usize) -> T {
        self.a_lo[c]
    }

    /// Checks every constraint of the program at `(a, b)` within `tol`.
    pub fn is_feasible(&self, a: &[T], b: &[T], tol: T) -> bool {
        let m = self.num_contexts();
        if a.len() != m || b.len() != m {
            return false;
        }
        let per_context = (0..m).all(|c| {
            let pc = self.context_marginal[c];
            pc >= b[c] - tol
                && b[c] >= a[c] - tol
                && a[c] >= -tol
                && a[c] <= self.joint_mass + tol
                && b[c] <= self.arm_mass + tol
                && a[c] >= self.a_lo[c] - tol
                && b[c] >= self.b_lo[c] - tol
        });
        let sa: T = a.iter().copied().sum();
        let sb: T = b.iter().copied().sum();
        per_context && (sa - self.joint_mass).abs() <= tol && (sb - self.arm_mass).abs() <= tol
    }

    /// Objective `sum_c a_c P(c) / b_c`, with vanishing `b_c` valued by its
    /// limit for `sense`.
    pub fn objective(&self, a: &[T], b: &[T], sense: Sense) -> T {
        let eps = T::zero_tol();
        (0..self.num_contexts())
            .map(|c| {
                if b[c] > eps {
                    a[c] * self.context_marginal[c] / b[c]
                } else {
                    self.vanishing_term(c, sense)
                }
            })
            .sum()
    }

    fn vanishing_term(&self, c: usize, sense: Sense) -> T {
        match sense {
            Sense::Max => self.context_marginal[c],
            Sense::Min => T::zero(),
        }
    }

    /// Greedy solution of the linear problem in `a` for fixed `b`: contexts
    /// are visited by coefficient `P(c) / b_c` (descending to maximize,
    /// ascending to minimize, ties by index) and each `a_c` is raised from
    /// its floor towards `min(P(x, y), b_c)` until `sum a = P(x, y)`.
    pub fn inner_allocation(&self, b: &[T], sense: Sense) -> Result<Allocation<T>> {
        let m = self.num_contexts();
        if b.len() != m {
            return Err(Error::InvalidArgument(format!(
                "b has {} entries, expected {m}",
                b.len()
            )));
        }
        let tol = T::feas_tol();
        let sb: T = b.iter().copied().sum();
        if (0..m).any(|c| b[c] < self.b_lo[c] - tol || b[c] > self.b_hi[c] + tol)
            || (sb - self.arm_mass).abs() > tol
        {
            return Err(Error::Infeasible(
                "b violates its box or sum constraint".into(),
            ));
        }
        let mut order = Vec::with_capacity(m);
        let mut a = vec![T::zero(); m];
        let value = self.fill(b, sense, &mut order, Some(&mut a))?;
        Ok(Allocation { a, value })
    }

    /// Inner optimum value only; `order` is caller-provided scratch.
    fn fill(
        &self,
        b: &[T],
        sense: Sense,
        order: &mut Vec<usize>,
        mut a_out: Option<&mut [T]>,
    ) -> Result<T> {
        let m = self.num_contexts();
        let eps = T::zero_tol();
        let mut remaining = self.joint_mass;
        let mut value = T::zero();
        order.clear();
        for c in 0..m {
            let lo = self.a_lo[c];
            if b[c] > eps {
                value = value + lo * self.context_marginal[c] / b[c];
                order.push(c);
            } else {
                if lo > eps {
                    return Err(Error::Infeasible(format!(
                        "b_{c} = 0 but a_{c} must be at least {lo}"
                    )));
                }
                value = value + self.vanishing_term(c, sense);
            }
            remaining = remaining - lo;
            if let Some(a) = a_out.as_deref_mut() {
                a[c] = if b[c] > eps { lo } else { T::zero() };
            }
        }
        let coef = |c: usize| self.context_marginal[c] / b[c];
        match sense {
            Sense::Max => order.sort_by(|&i, &j| coef(j).partial_cmp(&coef(i)).unwrap()),
            Sense::Min => order.sort_by(|&i, &j| coef(i).partial_cmp(&coef(j)).unwrap()),
        }
        for &c in order.iter() {
            if remaining <= T::zero() {
                break;
            }
            let cap = self.joint_mass.min(b[c]) - self.a_lo[c];
            let add = remaining.min(cap.max(T::zero()));
            value = value + add * coef(c);
            remaining = remaining - add;
            if let Some(a) = a_out.as_deref_mut() {
                a[c] = a[c] + add;
            }
        }
        if remaining > T::feas_tol() {
            return Err(Error::Infeasible(format!(
                "a cannot absorb P(x, y): {remaining} left over"
            )));
        }
        Ok(value)
    }

    /// Inner value for a candidate `b`, or `None` when `b` is infeasible.
    fn value_at(&self, b: &[T], sense: Sense, order: &mut Vec<usize>) -> Option<T> {
        self.fill(b, sense, order, None).ok()
    }

    /// Completes `b` by solving the sum constraint for coordinate `free`;
    /// `None` when the completed coordinate leaves its box.
    fn complete(&self, b: &mut [T], free: usize) -> bool {
        let tol = T::feas_tol();
        let rest: T = (0..b.len()).filter(|&c| c != free).map(|c| b[c]).sum();
        let v = self.arm_mass - rest;
        if v < self.b_lo[free] - tol || v > self.b_hi[free] + tol {
            return false;
        }
        b[free] = v.max(self.b_lo[free]).min(self.b_hi[free]);
        true
    }

    /// Vertices of the `b` polytope: every coordinate but one at a bound.
    pub fn b_vertices(&self) -> Vec<Vec<T>> {
        let m = self.num_contexts();
        let mut out: Vec<Vec<T>> = Vec::new();
        if m > 16 {
            return out;
        }
        for free in 0..m {
            for mask in 0u32..(1u32 << (m - 1)) {
                let mut b = vec![T::zero(); m];
                for (bit, c) in (0..m).filter(|&c| c != free).enumerate() {
                    b[c] = if mask >> bit & 1 == 1 {
                        self.b_hi[c]
                    } else {
                        self.b_lo[c]
                    };
                }
                if self.complete(&mut b, free)
                    && !out.iter().any(|v| max_abs_diff(v, &b) <= T::zero_tol())
                {
                    out.push(b);
                }
            }
        }
        out
    }

    /// Global search over `b` for the optimal program value.
    pub fn solve(&self, sense: Sense, options: &SolverOptions) -> Result<ProgramSolution<T>> {
        let m = self.num_contexts();
        let mut evaluations = 0u64;
        let mut order = Vec::with_capacity(m);

        if m == 1 {
            let b = vec![self.arm_mass];
            let alloc = self.inner_allocation(&b, sense)?;
            return Ok(ProgramSolution {
                value: alloc.value,
                a: alloc.a,
                b,
                diagnostics: SolverDiagnostics {
                    method: "closed-form",
                    contexts: 1,
                    evaluations: 1,
                    starts: 0,
                    grid_resolution: None,
                    refine_resolution: None,
                },
            });
        }

        let mut incumbents = Incumbents::new(sense, 4);
        for v in self.b_vertices() {
            evaluations += 1;
            if let Some(val) = self.value_at(&v, sense, &mut order) {
                incumbents.offer(val, v, T::zero());
            }
        }

        let (method, starts, grid_res, refine_res);
        if m <= 3 {
            let h = T::lit(options.grid_resolution);
            let free = self.widest_coordinate();
            let full: Vec<(T, T)> = (0..m).map(|c| (self.b_lo[c], self.b_hi[c])).collect();
            evaluations += self.grid_scan(&full, free, h, sense, &mut incumbents);

            let r = T::lit(options.refine_resolution);
            let window = h + h;
            let seeds: Vec<Vec<T>> = incumbents.points();
            for center in seeds {
                let boxes: Vec<(T, T)> = (0..m)
                    .map(|c| {
                        (
                            (center[c] - window).max(self.b_lo[c]),
                            (center[c] + window).min(self.b_hi[c]),
                        )
                    })
                    .collect();
                evaluations += self.grid_scan(&boxes, free, r, sense, &mut incumbents);
            }
            method = "grid+refine+descent";
            starts = incumbents.len();
            grid_res = Some(options.grid_resolution);
            refine_res = Some(options.refine_resolution);
        } else {
            if m == 4 {
                let h = T::lit(options.cross_check_resolution);
                let free = self.widest_coordinate();
                let full: Vec<(T, T)> = (0..m).map(|c| (self.b_lo[c], self.b_hi[c])).collect();
                evaluations += self.grid_scan(&full, free, h, sense, &mut incumbents);
            }
            method = "multistart-descent";
            starts = options.starts;
            grid_res = (m == 4).then_some(options.cross_check_resolution);
            refine_res = None;
        }

        // Local descent from the incumbents, plus random interior starts
        // (convex combinations of vertices) up to the requested count.
        let mut start_points = incumbents.points();
        if m > 3 {
            let vertices = self.b_vertices();
            let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
            while start_points.len() < options.starts && !vertices.is_empty() {
                let weights: Vec<f64> = vertices
                    .iter()
                    .map(|_| -rng.gen::<f64>().max(f64::MIN_POSITIVE).ln())
                    .collect();
                let total: f64 = weights.iter().sum();
                let mut b = vec![T::zero(); m];
                for (v, w) in vertices.iter().zip(&weights) {
                    let w = T::lit(w / total);
                    for c in 0..m {
                        b[c] = b[c] + w * v[c];
                    }
                }
                start_points.push(b);
            }
        }
        let step = T::lit(options.grid_resolution.max(options.refine_resolution) * 10.0);
        let results: Vec<(Best<T>, u64)> = start_points
            .into_par_iter()
            .map(|b| self.pattern_search(b, sense, step))
            .collect();
        // Deterministic reduction: best value, ties to the lowest start index.
        let mut best: Option<(T, Vec<T>)> = incumbents.best();
        for (found, evals) in results {
            evaluations += evals;
            if let Some((v, b)) = found {
                if best
                    .as_ref()
                    .is_none_or(|(bv, _)| sense.strictly_better(v, *bv))
                {
                    best = Some((v, b));
                }
            }
        }
        let (_, b) = best.ok_or_else(|| Error::Infeasible("b polytope is empty".into()))?;
        let alloc = self.inner_allocation(&b, sense)?;
        Ok(ProgramSolution {
            value: alloc.value,
            a: alloc.a,
            b,
            diagnostics: SolverDiagnostics {
                method,
                contexts: m,
                evaluations,
                starts,
                grid_resolution: grid_res,
                refine_resolution: refine_res,
            },
        })
    }

    fn widest_coordinate(&self) -> usize {
        (0..self.num_contexts())
            .max_by(|&i, &j| {
                (self.b_hi[i] - self.b_lo[i])
                    .partial_cmp(&(self.b_hi[j] - self.b_lo[j]))
                    .unwrap()
                    .then(j.cmp(&i))
            })
            .unwrap_or(0)
    }

    /// Exhaustive grid over every coordinate but `free`, inside `boxes`.
    fn grid_scan(
        &self,
        boxes: &[(T, T)],
        free: usize,
        step: T,
        sense: Sense,
        incumbents: &mut Incumbents<T>,
    ) -> u64 {
        let m = self.num_contexts();
        let axes: Vec<Vec<T>> = (0..m)
            .map(|c| {
                if c == free {
                    vec![T::zero()]
                } else {
                    grid_axis(boxes[c].0, boxes[c].1, step)
                }
            })
            .collect();
        let mut idx = vec![0usize; m];
        let mut b = vec![T::zero(); m];
        let mut order = Vec::with_capacity(m);
        let mut evaluations = 0;
        loop {
            for c in 0..m {
                b[c] = axes[c][idx[c]];
            }
            if self.complete(&mut b, free) {
                evaluations += 1;
                if let Some(v) = self.value_at(&b, sense, &mut order) {
                    incumbents.offer(v, b.clone(), step + step);
                }
            }
            let mut d = 0;
            loop {
                if d == m {
                    return evaluations;
                }
                idx[d] += 1;
                if idx[d] < axes[d].len() {
                    break;
                }
                idx[d] = 0;
                d += 1;
            }
        }
    }

    /// Compass search along the sum-preserving directions `e_i - e_j`.
    /// Steps that would leave the box are shortened to land on it.
    fn pattern_search(
        &self,
        mut b: Vec<T>,
        sense: Sense,
        initial_step: T,
    ) -> (Option<(T, Vec<T>)>, u64) {
        let m = self.num_contexts();
        let mut order = Vec::with_capacity(m);
        let mut evaluations = 1u64;
        let mut current = match self.value_at(&b, sense, &mut order) {
            Some(v) => v,
            None => return (None, evaluations),
        };
        let min_step = T::lit(1e-10);
        let mut step = initial_step;
        let mut trial = b.clone();
        while step > min_step {
            let mut improved = false;
            for i in 0..m {
                for j in 0..m {
                    if i == j {
                        continue;
                    }
                    let room = (self.b_hi[i] - b[i]).min(b[j] - self.b_lo[j]);
                    let s = step.min(room);
                    if s <= T::zero() {
                        continue;
                    }
                    trial.copy_from_slice(&b);
                    trial[i] = trial[i] + s;
                    trial[j] = trial[j] - s;
                    evaluations += 1;
                    if let Some(v) = self.value_at(&trial, sense, &mut order) {
                        if sense.strictly_better(v, current) {
                            current = v;
                            b.copy_from_slice(&trial);
                            improved = true;
                        }
                    }
                }
            }
            if !improved {
                step = step / T::lit(2.0);
            }
        }
        (Some((current, b)), evaluations)
    }

    /// Exhaustive grid over `b` at `resolution` with `a` solved exactly. Each
    /// context in turn is the coordinate fixed by the sum constraint while
    /// the others sweep their boxes, so every vertex of the `b` polytope is
    /// visited. No refinement and no local search, so it is independent of
    /// the search strategy in [`FractionalProgram::solve`].
    pub fn brute_force(&self, sense: Sense, resolution: T) -> Result<OracleSolution<T>> {
        if !(resolution > T::zero()) {
            return Err(Error::InvalidArgument(format!(
                "grid resolution must be positive, got {resolution}"
            )));
        }
        let m = self.num_contexts();
        if m > 4 {
            return Err(Error::InvalidArgument(format!(
                "brute-force oracle supports at most 4 contexts, got {m}"
            )));
        }
        let axes: Vec<Vec<T>> = (0..m)
            .map(|c| grid_axis(self.b_lo[c], self.b_hi[c], resolution))
            .collect();
        // One work item per (dependent context, first free grid index);
        // items are reduced in order.
        let items: Vec<(usize, usize)> = (0..m)
            .flat_map(|dep| {
                let first = (0..m).find(|&c| c != dep);
                let len = first.map_or(1, |c| axes[c].len());
                (0..len).map(move |i0| (dep, i0))
            })
            .collect();
        let partials: Vec<(Best<T>, u64)> = items
            .into_par_iter()
            .map(|(dep, i0)| {
                let free: Vec<usize> = (0..m).filter(|&c| c != dep).collect();
                let mut order = Vec::with_capacity(m);
                let mut b = vec![T::zero(); m];
                let mut best: Option<(T, Vec<T>)> = None;
                let mut evaluations = 0u64;
                let mut idx = vec![0usize; free.len()];
                if !free.is_empty() {
                    idx[0] = i0;
                }
                loop {
                    for (&c, &k) in free.iter().zip(&idx) {
                        b[c] = axes[c][k];
                    }
                    if self.complete(&mut b, dep) {
                        evaluations += 1;
                        if let Some(v) = self.value_at(&b, sense, &mut order) {
                            if best
                                .as_ref()
                                .is_none_or(|(bv, _)| sense.strictly_better(v, *bv))
                            {
                                best = Some((v, b.clone()));
                            }
                        }
                    }
                    let mut d = 1;
                    loop {
                        if d >= free.len() {
                            return (best, evaluations);
                        }
                        idx[d] += 1;
                        if idx[d] < axes[free[d]].len() {
                            break;
                        }
                        idx[d] = 0;
                        d += 1;
                    }
                }
            })
            .collect();
        let mut best: Option<(T, Vec<T>)> = None;
        let mut evaluations = 0;
        for (found, evals) in partials {
            evaluations += evals;
            if let Some((v, b)) = found {
                if best
                    .as_ref()
                    .is_none_or(|(bv, _)| sense.strictly_better(v, *bv))
                {
                    best = Some((v, b));
                }
            }
        }
        let (value, b) =
            best.ok_or_else(|| Error::Infeasible("grid contains no feasible b".into()))?;
        let min_b = self.b_lo.iter().copied().fold(T::infinity(), T::min);
        let certified_gap = if min_b > T::zero_tol() {
            // |dV/db_c| <= 2 P(c) / b_c; a grid move displaces b by at most
            // 2 (|C| - 1) resolution in L1.
            let lipschitz = self
                .context_marginal
                .iter()
                .map(|&pc| T::lit(2.0) * pc / min_b)
                .fold(T::zero(), T::max);
            Some(lipschitz * T::lit(2.0 * (m - 1) as f64) * resolution)
        } else {
            None
        };
        Ok(OracleSolution {
            value,
            b,
            evaluations,
            certified_gap,
        })
    }
}

/// Result of [`FractionalProgram::brute_force`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleSolution<T> {
    pub value: T,
    pub b: Vec<T>,
    pub evaluations: u64,
    /// Lipschitz-based distance to the true optimum, when the smallest
    /// feasible `b_c` is bounded away from zero.
    pub certified_gap: Option<T>,
}

fn grid_axis<T: Scalar>(lo: T, hi: T, step: T) -> Vec<T> {
    let mut pts = Vec::new();
    let mut k = 0u64;
    loop {
        let v = lo + T::from_count(k) * step;
        if v >= hi {
            break;
        }
        pts.push(v);
        k += 1;
    }
    pts.push(hi);
    pts
}

fn max_abs_diff<T: Scalar>(x: &[T], y: &[T]) -> T {
    x.iter()
        .zip(y)
        .map(|(&p, &q)| (p - q).abs())
        .fold(T::zero(), T::max)
}

/// Best few distinct grid points seen so far.
struct Incumbents<T> {
    sense: Sense,
    cap: usize,
    items: Vec<(T, Vec<T>)>,
}

impl<T: Scalar> Incumbents<T> {
    fn new(sense: Sense, cap: usize) -> Self {
        Self {
            sense,
            cap,
            items: Vec::with_capacity(cap + 1),
        }
    }

    /// Keeps `(value, b)` when it ranks in the top `cap`; points within
    /// `separation` of a better incumbent are merged into it.
    fn offer(&mut self, value: T, b: Vec<T>, separation: T) {
        if self.items.len() == self.cap {
            let worst = self.items.last().map(|(v, _)| *v).unwrap();
            if !self.sense.strictly_better(value, worst) {
                return;
            }
        }
        if let Some(pos) = self
            .items
            .iter()
            .position(|(_, p)| max_abs_diff(p, &b) <= separation)
        {
            if self.sense.strictly_better(value, self.items[pos].0) {
                self.items.remove(pos);
            } else {
                return;
            }
        }
        let at = self
            .items
            .iter()
            .position(|(v, _)| self.sense.strictly_better(value, *v))
            .unwrap_or(self.items.len());
        self.items.insert(at, (value, b));
        self.items.truncate(self.cap);
    }

    fn points(&self) -> Vec<Vec<T>> {
        self.items.iter().map(|(_, b)| b.clone()).collect()
    }

    fn best(&self) -> Option<(T, Vec<T>)> {
        self.items.first().cloned()
    }

    fn len(&self) -> usize {
        self.items.len()
    }
}
