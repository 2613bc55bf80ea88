//! Power allocation search for the network-coded strategies.
//!
//! The network throughput of LNC and DPC depends on how each source splits
//! its power between its own codeword and the one it relays. The objective
//! `I_1 + I_2` is a min of smooth terms per user and is not concave, so the
//! search is derivative free: a coarse grid over the feasible set followed
//! by shrinking-step pattern refinement around the incumbent, probing axis
//! and two-axis diagonal directions. A brute-force grid oracle at
//! configurable resolution serves as the accuracy reference.
//!
//! Parameterization keeps iterates feasible by construction. Under the
//! equality budget (`f_i1^2 + f_i2^2 = 1`) each source contributes one
//! angle, `f_i1 = cos(theta_i)`, `f_i2 = sin(theta_i)`, `theta_i` in
//! `[0, pi/2]`. Under the inequality budget each source contributes a spent
//! power fraction `u_i = r_i^2` in `[0, 1]` plus the same angle, with
//! `f_i1 = r_i cos(theta_i)`.
//!
//! Everything here is deterministic: grids are scanned in lexicographic
//! axis order, refinement probes run in a fixed order, and an incumbent is
//! only replaced by a strictly better objective, so the first point probed
//! wins among ties. For DPC the four encoding order pairs are searched
//! independently in [`DpcOrderingPair::ALL`] order and compared the same
//! way.

use std::f64::consts::FRAC_PI_2;

use thiserror::Error;

use crate::model::{ChannelRealization, DpcOrderingPair, NormMode, PowerAllocation, SnrPoint};
use crate::rates::{self, dpc_favors, user_alloc, user_gains, UserGains, UserId};

/// Settings validation failure or an out-of-range oracle resolution.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AllocatorError {
    #[error("grid_points_per_axis must be at least 2, got {0}")]
    TooFewGridPoints(usize),
    #[error("tolerance must be finite and > 0, got {0}")]
    InvalidTolerance(f64),
    #[error("oracle resolution must be in (0, 1], got {0}")]
    InvalidResolution(f64),
}

/// Knobs for the grid-plus-refinement search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerSettings {
    grid_points_per_axis: usize,
    refine_rounds: u32,
    tolerance: f64,
    norm_mode: NormMode,
}

impl Default for OptimizerSettings {
    fn default() -> Self {
        Self { grid_points_per_axis: 25, refine_rounds: 3, tolerance: 1e-4, norm_mode: NormMode::Equality }
    }
}

impl OptimizerSettings {
    pub fn new(
        grid_points_per_axis: usize,
        refine_rounds: u32,
        tolerance: f64,
        norm_mode: NormMode,
    ) -> Result<Self, AllocatorError> {
        if grid_points_per_axis < 2 {
            return Err(AllocatorError::TooFewGridPoints(grid_points_per_axis));
        }
        if !(tolerance.is_finite() && tolerance > 0.0) {
            return Err(AllocatorError::InvalidTolerance(tolerance));
        }
        Ok(Self { grid_points_per_axis, refine_rounds, tolerance, norm_mode })
    }

    pub fn grid_points_per_axis(&self) -> usize {
        self.grid_points_per_axis
    }

    /// Refinement rounds after the coarse grid; each halves the probe step.
    pub fn refine_rounds(&self) -> u32 {
        self.refine_rounds
    }

    /// A refinement round that gains less than this ends the search.
    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn norm_mode(&self) -> NormMode {
        self.norm_mode
    }

    pub fn with_norm_mode(mut self, norm_mode: NormMode) -> Self {
        self.norm_mode = norm_mode;
        self
    }
}

/// Outcome of a search: the best allocation found, the encoding order pair
/// it belongs to (DPC only), its objective value, and how many objective
/// evaluations were spent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AllocationResult {
    pub best_alloc: PowerAllocation,
    pub best_ordering: Option<DpcOrderingPair>,
    pub objective: f64,
    pub evaluations: u64,
}

/// Which network-coded strategy the oracle maximizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NcStrategy {
    Lnc,
    Dpc,
}

// ---------------------------------------------------------------------------
// Objectives
// ---------------------------------------------------------------------------

#[derive(Clone, Copy)]
enum ObjectiveKind {
    Lnc,
    Dpc(DpcOrderingPair),
}

/// Network throughput as a function of the allocation, with the
/// rho-scaled link gains hoisted out of the inner loop.
struct Objective {
    g1: UserGains,
    g2: UserGains,
    kind: ObjectiveKind,
}

impl Objective {
    fn new(ch: &ChannelRealization, snr: SnrPoint, kind: ObjectiveKind) -> Self {
        Self {
            g1: user_gains(ch, snr, UserId::User1),
            g2: user_gains(ch, snr, UserId::User2),
            kind,
        }
    }

    fn eval(&self, alloc: &PowerAllocation) -> f64 {
        let a1 = user_alloc(alloc, UserId::User1);
        let a2 = user_alloc(alloc, UserId::User2);
        match self.kind {
            ObjectiveKind::Lnc => {
                rates::lnc_kernel(&self.g1, &a1) + rates::lnc_kernel(&self.g2, &a2)
            }
            ObjectiveKind::Dpc(ordering) => {
                let (own1, partner1) = dpc_favors(ordering, UserId::User1);
                let (own2, partner2) = dpc_favors(ordering, UserId::User2);
                rates::dpc_kernel(&self.g1, &a1, own1, partner1)
                    + rates::dpc_kernel(&self.g2, &a2, own2, partner2)
            }
        }
    }
}

/// Network throughput `I_1 + I_2` of LNC at a fixed allocation.
pub fn objective_lnc(ch: &ChannelRealization, snr: SnrPoint, alloc: &PowerAllocation) -> f64 {
    Objective::new(ch, snr, ObjectiveKind::Lnc).eval(alloc)
}

/// Network throughput `I_1 + I_2` of DPC at a fixed allocation and encoding
/// order pair.
pub fn objective_dpc(
    ch: &ChannelRealization,
    snr: SnrPoint,
    alloc: &PowerAllocation,
    ordering: DpcOrderingPair,
) -> f64 {
    Objective::new(ch, snr, ObjectiveKind::Dpc(ordering)).eval(alloc)
}

// ---------------------------------------------------------------------------
// Search engine
// ---------------------------------------------------------------------------

/// Box-constrained parameter space producing feasible allocations.
struct SearchSpace {
    dims: usize,
    lo: [f64; 4],
    hi: [f64; 4],
    mode: NormMode,
}

impl SearchSpace {
    fn for_mode(mode: NormMode) -> Self {
        match mode {
            NormMode::Equality => Self {
                dims: 2,
                lo: [0.0; 4],
                hi: [FRAC_PI_2, FRAC_PI_2, 0.0, 0.0],
                mode,
            },
            NormMode::Inequality => Self {
                dims: 4,
                lo: [0.0; 4],
                hi: [1.0, FRAC_PI_2, 1.0, FRAC_PI_2],
                mode,
            },
        }
    }

    fn alloc_at(&self, p: &[f64; 4]) -> PowerAllocation {
        match self.mode {
            NormMode::Equality => PowerAllocation::from_angles(p[0], p[1]),
            NormMode::Inequality => {
                let r1 = p[0].sqrt();
                let r2 = p[2].sqrt();
                PowerAllocation::new_unchecked(
                    r1 * p[1].cos(),
                    r1 * p[1].sin(),
                    r2 * p[3].cos(),
                    r2 * p[3].sin(),
                )
            }
        }
    }

    /// Parameters reproducing one of [`PowerAllocation::CORNERS`].
    fn corner_params(&self, corner: &PowerAllocation) -> [f64; 4] {
        let t1 = if corner.f11() == 1.0 { 0.0 } else { FRAC_PI_2 };
        let t2 = if corner.f21() == 1.0 { 0.0 } else { FRAC_PI_2 };
        match self.mode {
            NormMode::Equality => [t1, t2, 0.0, 0.0],
            NormMode::Inequality => [1.0, t1, 1.0, t2],
        }
    }
}

#[derive(Clone, Copy)]
struct Incumbent {
    params: [f64; 4],
    alloc: PowerAllocation,
    value: f64,
}

/// Starts kept for refinement after the coarse scan. The objective has a
/// handful of competing local maxima per channel, so refining only the
/// single best grid point occasionally converges a few millibits short of
/// the global one.
const REFINE_STARTS: usize = 5;

/// Keeps `starts` as the value-ranked representatives of distinct basins.
/// A candidate next to an existing, at-least-as-good start is dropped; a
/// candidate that beats its neighbors replaces them. Ranking ties keep the
/// earlier-probed point first.
fn consider_start(
    starts: &mut Vec<Incumbent>,
    candidate: Incumbent,
    step: &[f64; 4],
    dims: usize,
) {
    let near = |s: &Incumbent| {
        (0..dims).all(|d| (s.params[d] - candidate.params[d]).abs() <= 1.5 * step[d])
    };
    if starts.iter().any(|s| near(s) && s.value >= candidate.value) {
        return;
    }
    starts.retain(|s| !near(s));
    let rank = starts.iter().position(|s| s.value < candidate.value).unwrap_or(starts.len());
    if rank < REFINE_STARTS {
        starts.insert(rank, candidate);
        starts.truncate(REFINE_STARTS);
    }
}

/// Pattern refinement around one start: probe a fan of directions scaled
/// to the working step, move to the best strictly improving probe, and
/// halve the step whenever the whole stencil fails. The objective is a sum
/// of min{} terms whose maxima sit on ridges where two terms cross, and a
/// probe improves there only if it points within a narrow cone around the
/// ridge tangent; the fan therefore covers axis, diagonal and shallow
/// off-axis directions rather than just coordinate moves. Each round
/// restarts at half the previous round's step; a round that gains less
/// than the tolerance ends the refinement.
fn refine(
    obj: &Objective,
    space: &SearchSpace,
    step: &[f64; 4],
    settings: &OptimizerSettings,
    mut best: Incumbent,
    evals: &mut u64,
) -> Incumbent {
    let mut directions: Vec<[f64; 4]> = Vec::new();
    for d in 0..space.dims {
        for sign in [-1.0, 1.0] {
            let mut dir = [0.0; 4];
            dir[d] = sign;
            directions.push(dir);
        }
    }
    for i in 0..space.dims {
        for j in (i + 1)..space.dims {
            for (si, sj) in [(-1.0, -1.0), (-1.0, 1.0), (1.0, -1.0), (1.0, 1.0)] {
                let mut dir = [0.0; 4];
                dir[i] = si;
                dir[j] = sj;
                directions.push(dir);
            }
        }
    }
    // Shallow off-axis probes, roughly 14 and 27 degrees off each axis
    // within each plane; these catch ridges whose tangent falls between
    // the axis and diagonal directions.
    for i in 0..space.dims {
        for j in 0..space.dims {
            if i == j {
                continue;
            }
            for (si, sj) in [(-1.0, -1.0), (-1.0, 1.0), (1.0, -1.0), (1.0, 1.0)] {
                for ratio in [0.25, 0.5] {
                    let mut dir = [0.0; 4];
                    dir[i] = si;
                    dir[j] = sj * ratio;
                    directions.push(dir);
                }
            }
        }
    }

    for round in 1..=settings.refine_rounds {
        let mut scale = 0.5f64.powi(round as i32);
        let mut round_gain = 0.0;
        let mut moves = 0;
        while moves < 200 && scale > 1e-7 {
            let mut candidate: Option<Incumbent> = None;
            for dir in &directions {
                let mut p = best.params;
                for d in 0..space.dims {
                    p[d] = (p[d] + dir[d] * step[d] * scale).clamp(space.lo[d], space.hi[d]);
                }
                if p == best.params {
                    continue;
                }
                let alloc = space.alloc_at(&p);
                let value = obj.eval(&alloc);
                *evals += 1;
                let improves =
                    value > best.value && candidate.as_ref().is_none_or(|c| value > c.value);
                if improves {
                    candidate = Some(Incumbent { params: p, alloc, value });
                }
            }
            match candidate {
                Some(c) => {
                    round_gain += c.value - best.value;
                    best = c;
                    moves += 1;
                }
                None => scale *= 0.5,
            }
        }
        if round_gain < settings.tolerance {
            break;
        }
    }
    best
}

/// Coarse lexicographic grid scan, explicit corner probes, then pattern
/// refinement from the best few basin representatives. Returns the final
/// incumbent and the number of objective evaluations.
fn search(obj: &Objective, settings: &OptimizerSettings) -> (Incumbent, u64) {
    let space = SearchSpace::for_mode(settings.norm_mode);
    let n = settings.grid_points_per_axis;
    let mut step = [0.0f64; 4];
    for (d, s) in step.iter_mut().enumerate().take(space.dims) {
        *s = (space.hi[d] - space.lo[d]) / (n - 1) as f64;
    }

    let mut evals: u64 = 0;
    let mut starts: Vec<Incumbent> = Vec::new();

    // Lexicographic scan with the last axis fastest; among equal values
    // the first point probed keeps its rank.
    let mut idx = [0usize; 4];
    'grid: loop {
        let mut p = [0.0f64; 4];
        for d in 0..space.dims {
            p[d] = space.lo[d] + idx[d] as f64 * step[d];
        }
        let alloc = space.alloc_at(&p);
        let value = obj.eval(&alloc);
        evals += 1;
        consider_start(&mut starts, Incumbent { params: p, alloc, value }, &step, space.dims);
        let mut d = space.dims;
        loop {
            if d == 0 {
                break 'grid;
            }
            d -= 1;
            idx[d] += 1;
            if idx[d] < n {
                break;
            }
            idx[d] = 0;
        }
    }

    // One-hot corners probed with exact entries; the grid endpoints only
    // approximate them through cos(pi/2).
    for corner in &PowerAllocation::CORNERS {
        let value = obj.eval(corner);
        evals += 1;
        let params = space.corner_params(corner);
        consider_start(&mut starts, Incumbent { params, alloc: *corner, value }, &step, space.dims);
    }

    // Refine every start; the best refined point wins, earlier-ranked
    // starts winning exact ties. The top start is the grid maximum and
    // refinement never loses value, so the result dominates the full
    // coarse grid and all four corners.
    let mut best: Option<Incumbent> = None;
    for start in starts {
        let refined = refine(obj, &space, &step, settings, start, &mut evals);
        if best.as_ref().is_none_or(|b| refined.value > b.value) {
            best = Some(refined);
        }
    }
    (best.expect("grid has at least one point"), evals)
}

// ---------------------------------------------------------------------------
// Public optimizers
// ---------------------------------------------------------------------------

/// Maximizes LNC network throughput over feasible allocations.
pub fn optimize_lnc(
    ch: &ChannelRealization,
    snr: SnrPoint,
    settings: &OptimizerSettings,
) -> AllocationResult {
    let obj = Objective::new(ch, snr, ObjectiveKind::Lnc);
    let (best, evaluations) = search(&obj, settings);
    AllocationResult {
        best_alloc: best.alloc,
        best_ordering: None,
        objective: best.value,
        evaluations,
    }
}

/// Maximizes DPC network throughput with the encoding order pair held
/// fixed.
pub fn optimize_dpc_with_ordering(
    ch: &ChannelRealization,
    snr: SnrPoint,
    settings: &OptimizerSettings,
    ordering: DpcOrderingPair,
) -> AllocationResult {
    let obj = Objective::new(ch, snr, ObjectiveKind::Dpc(ordering));
    let (best, evaluations) = search(&obj, settings);
    AllocationResult {
        best_alloc: best.alloc,
        best_ordering: Some(ordering),
        objective: best.value,
        evaluations,
    }
}

/// Maximizes DPC network throughput jointly over allocations and the four
/// encoding order pairs. Ties keep the earliest pair in
/// [`DpcOrderingPair::ALL`].
pub fn optimize_dpc(
    ch: &ChannelRealization,
    snr: SnrPoint,
    settings: &OptimizerSettings,
) -> AllocationResult {
    let mut best: Option<AllocationResult> = None;
    let mut evaluations = 0;
    for ordering in DpcOrderingPair::ALL {
        let result = optimize_dpc_with_ordering(ch, snr, settings, ordering);
        evaluations += result.evaluations;
        if best.as_ref().is_none_or(|b| result.objective > b.objective) {
            best = Some(result);
        }
    }
    let mut best = best.expect("four orderings searched");
    best.evaluations = evaluations;
    best
}

/// Exhaustive equality-budget grid reference. `resolution` is the angle
/// step as a fraction of `pi/2`, so e.g. 0.005 scans 201 points per axis;
/// the endpoint is always included. Intended as a slow accuracy oracle for
/// the optimizers, not for production sweeps.
pub fn oracle_grid(
    ch: &ChannelRealization,
    snr: SnrPoint,
    resolution: f64,
    strategy: NcStrategy,
) -> Result<AllocationResult, AllocatorError> {
    if !(resolution > 0.0 && resolution <= 1.0) {
        return Err(AllocatorError::InvalidResolution(resolution));
    }
    let n_steps = (1.0 / resolution + 1e-9).floor() as usize;
    let mut scales: Vec<f64> = (0..=n_steps).map(|k| (k as f64 * resolution).min(1.0)).collect();
    if scales.last().copied().unwrap() < 1.0 - 1e-12 {
        scales.push(1.0);
    }

    let objectives: Vec<(Objective, Option<DpcOrderingPair>)> = match strategy {
        NcStrategy::Lnc => vec![(Objective::new(ch, snr, ObjectiveKind::Lnc), None)],
        NcStrategy::Dpc => DpcOrderingPair::ALL
            .iter()
            .map(|&o| (Objective::new(ch, snr, ObjectiveKind::Dpc(o)), Some(o)))
            .collect(),
    };

    let mut evaluations = 0;
    let mut best: Option<AllocationResult> = None;
    for &s1 in &scales {
        for &s2 in &scales {
            let alloc = PowerAllocation::from_angles(s1 * FRAC_PI_2, s2 * FRAC_PI_2);
            for (obj, ordering) in &objectives {
                let objective = obj.eval(&alloc);
                evaluations += 1;
                if best.as_ref().is_none_or(|b| objective > b.objective) {
                    best = Some(AllocationResult {
                        best_alloc: alloc,
                        best_ordering: *ordering,
                        objective,
                        evaluations: 0,
                    });
                }
            }
        }
    }
    let mut best = best.expect("grid has at least one point");
    best.evaluations = evaluations;
    Ok(best)
}

// ---------------------------------------------------------------------------
