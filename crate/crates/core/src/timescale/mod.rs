//! Closed bounded time scales: ordered unions of isolated points, real
//! intervals and geometric clusters, with the jump operators sigma/rho and
//! the graininess functions mu/nu.

mod parse;

pub use parse::parse_scale;

use crate::error::{Error, Result};
use crate::snap::{close, tol};

/// Reading of the box symbol: delta (forward) or nabla (backward).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoxKind {
    Delta,
    Nabla,
}

/// One structural piece of a time scale.
///
/// A `GeometricCluster { limit, anchor, ratio }` denotes the closed set
/// `{limit} ∪ {limit + anchor * ratio^k : k = 0, 1, 2, ...}`, whose points
/// decrease strictly toward `limit`.
#[derive(Debug, Clone, PartialEq)]
pub enum ScaleComponent {
    IsolatedPoints(Vec<f64>),
    RealInterval { lo: f64, hi: f64 },
    GeometricCluster { limit: f64, anchor: f64, ratio: f64 },
}

impl ScaleComponent {
    pub fn min(&self) -> f64 {
        match self {
            ScaleComponent::IsolatedPoints(p) => p[0],
            ScaleComponent::RealInterval { lo, .. } => *lo,
            ScaleComponent::GeometricCluster { limit, .. } => *limit,
        }
    }

    pub fn max(&self) -> f64 {
        match self {
            ScaleComponent::IsolatedPoints(p) => *p.last().unwrap(),
            ScaleComponent::RealInterval { hi, .. } => *hi,
            ScaleComponent::GeometricCluster {
                limit,
                anchor,
                ratio: _,
            } => limit + anchor,
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            ScaleComponent::IsolatedPoints(p) => {
                if p.is_empty() {
                    return Err(Error::InvalidScale("empty point list".into()));
                }
                if !p.iter().all(|x| x.is_finite()) {
                    return Err(Error::InvalidScale("non-finite point".into()));
                }
                if p.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::InvalidScale(
                        "points must be strictly increasing".into(),
                    ));
                }
                Ok(())
            }
            ScaleComponent::RealInterval { lo, hi } => {
                if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                    return Err(Error::InvalidScale(format!(
                        "interval must have positive length, got [{lo}, {hi}]"
                    )));
                }
                Ok(())
            }
            ScaleComponent::GeometricCluster {
                limit,
                anchor,
                ratio,
            } => {
                if !(limit.is_finite() && *anchor > 0.0 && *ratio > 0.0 && *ratio < 1.0) {
                    return Err(Error::InvalidScale(format!(
                        "cluster requires anchor > 0 and ratio in (0,1), got anchor={anchor}, ratio={ratio}"
                    )));
                }
                Ok(())
            }
        }
    }

    /// The k-th cluster point `limit + anchor * ratio^k`.
    fn cluster_point(limit: f64, anchor: f64, ratio: f64, k: i64) -> f64 {
        limit + anchor * ratio.powi(k as i32)
    }

    /// Canonical in-component representative of `t`, if `t` is a member.
    fn locate(&self, t: f64) -> Option<InComponent> {
        match self {
            ScaleComponent::IsolatedPoints(p) => {
                let i = match p.binary_search_by(|x| x.partial_cmp(&t).unwrap()) {
                    Ok(i) => i,
                    Err(i) => {
                        if i < p.len() && close(p[i], t) {
                            i
                        } else if i > 0 && close(p[i - 1], t) {
                            i - 1
                        } else {
                            return None;
                        }
                    }
                };
                Some(InComponent::Isolated(i))
            }
            ScaleComponent::RealInterval { lo, hi } => {
                if t >= lo - tol(*lo) && t <= hi + tol(*hi) {
                    Some(InComponent::Dense(t.clamp(*lo, *hi)))
                } else {
                    None
                }
            }
            ScaleComponent::GeometricCluster {
                limit,
                anchor,
                ratio,
            } => {
                let y = t - limit;
                if y.abs() <= tol(*limit) {
                    return Some(InComponent::ClusterLimit);
                }
                if y <= 0.0 {
                    return None;
                }
                // log estimate corrected by a small integer scan; tolerance is
                // relative to the offset from the limit so deep cluster points
                // stay distinguishable.
                let k0 = ((y / anchor).ln() / ratio.ln()).round() as i64;
                for k in (k0 - 2).max(0)..=(k0 + 2).max(0) {
                    let p = Self::cluster_point(*limit, *anchor, *ratio, k);
                    if (p - t).abs() <= crate::snap::ETA * y.abs().max(tol(t)) {
                        return Some(InComponent::ClusterIndex(k));
                    }
                }
                None
            }
        }
    }

    /// Canonical value for a located member.
    fn point_of(&self, loc: &InComponent) -> f64 {
        match (self, loc) {
            (ScaleComponent::IsolatedPoints(p), InComponent::Isolated(i)) => p[*i],
            (ScaleComponent::RealInterval { .. }, InComponent::Dense(t)) => *t,
            (ScaleComponent::GeometricCluster { limit, .. }, InComponent::ClusterLimit) => *limit,
            (
                ScaleComponent::GeometricCluster {
                    limit,
                    anchor,
                    ratio,
                },
                InComponent::ClusterIndex(k),
            ) => Self::cluster_point(*limit, *anchor, *ratio, *k),
            _ => unreachable!("location does not match component"),
        }
    }

    /// Successor strictly inside this component, `None` at the component max.
    ///
    /// A cluster limit is right-dense, so its successor is itself.
    fn succ_within(&self, loc: &InComponent) -> Option<f64> {
        match (self, loc) {
            (ScaleComponent::IsolatedPoints(p), InComponent::Isolated(i)) => {
                p.get(i + 1).copied()
            }
            (ScaleComponent::RealInterval { hi, .. }, InComponent::Dense(t)) => {
                if close(*t, *hi) {
                    None
                } else {
                    Some(*t)
                }
            }
            (ScaleComponent::GeometricCluster { limit, .. }, InComponent::ClusterLimit) => {
                Some(*limit)
            }
            (
                ScaleComponent::GeometricCluster {
                    limit,
                    anchor,
                    ratio,
                },
                InComponent::ClusterIndex(k),
            ) => {
                if *k == 0 {
                    None
                } else {
                    Some(Self::cluster_point(*limit, *anchor, *ratio, k - 1))
                }
            }
            _ => unreachable!(),
        }
    }

    /// Predecessor strictly inside this component, `None` at the component min.
    fn pred_within(&self, loc: &InComponent) -> Option<f64> {
        match (self, loc) {
            (ScaleComponent::IsolatedPoints(p), InComponent::Isolated(i)) => {
                if *i == 0 {
                    None
                } else {
                    Some(p[i - 1])
                }
            }
            (ScaleComponent::RealInterval { lo, .. }, InComponent::Dense(t)) => {
                if close(*t, *lo) {
                    None
                } else {
                    Some(*t)
                }
            }
            (ScaleComponent::GeometricCluster { .. }, InComponent::ClusterLimit) => None,
            (
                ScaleComponent::GeometricCluster {
                    limit,
                    anchor,
                    ratio,
                },
                InComponent::ClusterIndex(k),
            ) => Some(Self::cluster_point(*limit, *anchor, *ratio, k + 1)),
            _ => unreachable!(),
        }
    }

    /// Greatest member `<= x`, assuming `self.min() <= x < self.max()`.
    fn floor_in(&self, x: f64) -> f64 {
        match self {
            ScaleComponent::IsolatedPoints(p) => {
                let i = p.partition_point(|v| *v <= x + tol(x));
                p[i.saturating_sub(1).min(p.len() - 1)]
            }
            ScaleComponent::RealInterval { lo, hi } => x.clamp(*lo, *hi),
            ScaleComponent::GeometricCluster {
                limit,
                anchor,
                ratio,
            } => {
                let y = x - limit;
                if y <= tol(*limit) {
                    return *limit;
                }
                // smallest k with anchor * ratio^k <= y, corrected by scan
                let k0 = ((y / anchor).ln() / ratio.ln()).ceil() as i64;
                let mut k = (k0 - 2).max(0);
                while Self::cluster_point(*limit, *anchor, *ratio, k) > x + tol(x) {
                    k += 1;
                }
                Self::cluster_point(*limit, *anchor, *ratio, k)
            }
        }
    }

    /// Least member `>= x`, assuming `self.min() < x <= self.max()`.
    fn ceil_in(&self, x: f64) -> f64 {
        match self {
            ScaleComponent::IsolatedPoints(p) => {
                let i = p.partition_point(|v| *v < x - tol(x));
                p[i.min(p.len() - 1)]
            }
            ScaleComponent::RealInterval { lo, hi } => x.clamp(*lo, *hi),
            ScaleComponent::GeometricCluster {
                limit,
                anchor,
                ratio,
            } => {
                let y = x - limit;
                if y <= tol(*limit) {
                    return *limit;
                }
                // largest k with anchor * ratio^k >= y, corrected by scan
                let k0 = ((y / anchor).ln() / ratio.ln()).floor() as i64;
                let mut k = (k0 + 2).max(0);
                while k > 0 && Self::cluster_point(*limit, *anchor, *ratio, k) < x - tol(x) {
                    k -= 1;
                }
                Self::cluster_point(*limit, *anchor, *ratio, k)
            }
        }
    }
}

/// Position of a member inside a single component.
#[derive(Debug, Clone, PartialEq)]
enum InComponent {
    Isolated(usize),
    Dense(f64),
    ClusterLimit,
    ClusterIndex(i64),
}

/// A nonempty closed bounded subset of the reals, stored as an ordered,
/// pairwise disjoint list of components.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeScale {
    components: Vec<ScaleComponent>,
}

impl TimeScale {
    /// Build a scale from components, sorting and merging where the union
    /// overlaps in a representable way.
    pub fn from_components(components: Vec<ScaleComponent>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidScale("no components".into()));
        }
        for c in &components {
            c.validate()?;
        }

        // Separate loose points from extended components, merge intervals,
        // then interleave.
        let mut loose: Vec<f64> = Vec::new();
        let mut extended: Vec<ScaleComponent> = Vec::new();
        for c in components {
            match c {
                ScaleComponent::IsolatedPoints(p) => loose.extend(p),
                other => extended.push(other),
            }
        }
        extended.sort_by(|a, b| a.min().partial_cmp(&b.min()).unwrap());

        let mut merged: Vec<ScaleComponent> = Vec::new();
        for c in extended {
            match (merged.last_mut(), &c) {
                (
                    Some(ScaleComponent::RealInterval { hi, .. }),
                    ScaleComponent::RealInterval { lo: clo, hi: chi },
                ) if *clo <= *hi + tol(*hi) => {
                    if *chi > *hi {
                        *hi = *chi;
                    }
                }
                (Some(prev), _) => {
                    if c.min() < prev.max() - tol(prev.max()) {
                        return Err(Error::InvalidScale(format!(
                            "components overlap near {}",
                            c.min()
                        )));
                    }
                    if close(c.min(), prev.max()) {
                        return Err(Error::InvalidScale(format!(
                            "components touch at {}; merge not representable",
                            c.min()
                        )));
                    }
                    merged.push(c);
                }
                (None, _) => merged.push(c),
            }
        }

        loose.sort_by(|a, b| a.partial_cmp(b).unwrap());
        loose.dedup_by(|a, b| close(*a, *b));
        // drop points already covered by an extended component
        loose.retain(|x| !merged.iter().any(|c| c.locate(*x).is_some()));

        let mut out: Vec<ScaleComponent> = Vec::new();
        let mut li = 0usize;
        for c in merged {
            let cut = loose[li..].partition_point(|x| *x < c.min());
            if cut > 0 {
                out.push(ScaleComponent::IsolatedPoints(
                    loose[li..li + cut].to_vec(),
                ));
            }
            li += cut;
            if loose[li..].first().is_some_and(|x| *x < c.max()) {
                return Err(Error::InvalidScale(format!(
                    "isolated point {} falls inside another component",
                    loose[li]
                )));
            }
            out.push(c);
        }
        if li < loose.len() {
            out.push(ScaleComponent::IsolatedPoints(loose[li..].to_vec()));
        }

        if out.is_empty() {
            return Err(Error::InvalidScale("no points".into()));
        }
        for w in out.windows(2) {
            if !(w[0].max() < w[1].min()) {
                return Err(Error::InvalidScale("components out of order".into()));
            }
        }
        Ok(TimeScale { components: out })
    }

    /// A finite set of isolated points.
    pub fn points(points: Vec<f64>) -> Result<Self> {
        let mut p = points;
        p.sort_by(|a, b| a.partial_cmp(b).unwrap());
        p.dedup_by(|a, b| close(*a, *b));
        Self::from_components(vec![ScaleComponent::IsolatedPoints(p)])
    }

    /// A closed real interval `[lo, hi]`.
    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        Self::from_components(vec![ScaleComponent::RealInterval { lo, hi }])
    }

    /// The arithmetic grid `{a, a+h, ..., b}`.
    pub fn uniform(a: f64, b: f64, h: f64) -> Result<Self> {
        if !(h > 0.0) {
            return Err(Error::InvalidScale(format!("step must be positive, got {h}")));
        }
        let span = b - a;
        let n = span / h;
        let k = n.round();
        if k < 1.0 || (n - k).abs() * h > tol(span.abs().max(h)) {
            return Err(Error::NotCommensurate { span, step: h });
        }
        let k = k as usize;
        let mut pts: Vec<f64> = (0..k).map(|i| a + i as f64 * h).collect();
        pts.push(b);
        Self::from_components(vec![ScaleComponent::IsolatedPoints(pts)])
    }

    /// The closure of `q^Z` intersected with `[0, 1]`: the cluster
    /// `{0} ∪ {q^{-k} : k >= 0}` for `q > 1`.
    pub fn qscale(q: f64) -> Result<Self> {
        if !(q > 1.0) {
            return Err(Error::InvalidRatio(q));
        }
        Self::from_components(vec![ScaleComponent::GeometricCluster {
            limit: 0.0,
            anchor: 1.0,
            ratio: 1.0 / q,
        }])
    }

    /// Union of several scales.
    pub fn union(parts: Vec<TimeScale>) -> Result<Self> {
        let comps = parts.into_iter().flat_map(|s| s.components).collect();
        Self::from_components(comps)
    }

    pub fn components(&self) -> &[ScaleComponent] {
        &self.components
    }

    pub fn min(&self) -> f64 {
        self.components[0].min()
    }

    pub fn max(&self) -> f64 {
        self.components.last().unwrap().max()
    }

    fn locate(&self, t: f64) -> Option<(usize, InComponent)> {
        // components are few; linear scan with an early exit
        for (i, c) in self.components.iter().enumerate() {
            if t < c.min() - tol(c.min()) {
                return None;
            }
            if t <= c.max() + tol(c.max()) {
                if let Some(loc) = c.locate(t) {
                    return Some((i, loc));
                }
                return None;
            }
        }
        None
    }

    /// Membership within snap tolerance.
    pub fn contains(&self, t: f64) -> bool {
        self.locate(t).is_some()
    }

    /// Canonical scale value of a member (snaps `t` onto the scale).
    pub fn snap(&self, t: f64) -> Result<f64> {
        let (i, loc) = self.locate(t).ok_or(Error::NotInScale(t))?;
        Ok(self.components[i].point_of(&loc))
    }

    /// Forward jump operator: `inf { s in T : s > t }`, with
    /// `sigma(max T) = max T`.
    pub fn sigma(&self, t: f64) -> Result<f64> {
        let (i, loc) = self.locate(t).ok_or(Error::NotInScale(t))?;
        if let Some(s) = self.components[i].succ_within(&loc) {
            return Ok(s);
        }
        match self.components.get(i + 1) {
            Some(next) => Ok(next.min()),
            None => Ok(self.components[i].point_of(&loc)),
        }
    }

    /// Backward jump operator: `sup { s in T : s < t }`, with
    /// `rho(min T) = min T`.
    pub fn rho(&self, t: f64) -> Result<f64> {
        let (i, loc) = self.locate(t).ok_or(Error::NotInScale(t))?;
        if let Some(s) = self.components[i].pred_within(&loc) {
            return Ok(s);
        }
        if i > 0 {
            Ok(self.components[i - 1].max())
        } else {
            Ok(self.components[i].point_of(&loc))
        }
    }

    /// Forward graininess `mu(t) = sigma(t) - t`.
    pub fn mu(&self, t: f64) -> Result<f64> {
        let t = self.snap(t)?;
        Ok((self.sigma(t)? - t).max(0.0))
    }

    /// Backward graininess `nu(t) = t - rho(t)`.
    pub fn nu(&self, t: f64) -> Result<f64> {
        let t = self.snap(t)?;
        Ok((t - self.rho(t)?).max(0.0))
    }

    /// Greatest scale point `<= x`.
    pub fn floor_point(&self, x: f64) -> Result<f64> {
        if x < self.min() - tol(self.min()) {
            return Err(Error::OutOfRange(x));
        }
        let mut best = self.min();
        for c in &self.components {
            if c.min() > x + tol(x) {
                break;
            }
            best = if x >= c.max() { c.max() } else { c.floor_in(x) };
        }
        Ok(best)
    }

    /// Least scale point `>= x`.
    pub fn ceil_point(&self, x: f64) -> Result<f64> {
        if x > self.max() + tol(self.max()) {
            return Err(Error::OutOfRange(x));
        }
        for c in &self.components {
            if c.max() >= x - tol(x) {
                return Ok(if x <= c.min() { c.min() } else { c.ceil_in(x) });
            }
        }
        Err(Error::OutOfRange(x))
    }

    /// All scale points in `[lo, hi]` when that set is finite with at most
    /// `cap` elements; `TooMany` when a dense stretch or a cluster limit
    /// makes it infinite, or the cap is exceeded.
    pub fn enumerate_between(&self, lo: f64, hi: f64, cap: usize) -> Result<Vec<f64>> {
        if lo > hi + tol(lo.abs().max(hi.abs())) {
            return Err(Error::InvalidScale(format!(
                "enumerate_between expects lo <= hi, got [{lo}, {hi}]"
            )));
        }
        let mut out: Vec<f64> = Vec::new();
        let push = |x: f64, out: &mut Vec<f64>| -> Result<()> {
            if out.len() >= cap {
                return Err(Error::TooMany { cap });
            }
            out.push(x);
            Ok(())
        };
        for c in &self.components {
            if c.max() < lo - tol(lo) {
                continue;
            }
            if c.min() > hi + tol(hi) {
                break;
            }
            match c {
                ScaleComponent::IsolatedPoints(p) => {
                    for &x in p {
                        if x >= lo - tol(lo) && x <= hi + tol(hi) {
                            push(x, &mut out)?;
                        }
                    }
                }
                ScaleComponent::RealInterval { lo: clo, hi: chi } => {
                    let s = clo.max(lo);
                    let e = chi.min(hi);
                    if close(s, e) {
                        push(s.clamp(*clo, *chi), &mut out)?;
                    } else {
                        return Err(Error::TooMany { cap });
                    }
                }
                ScaleComponent::GeometricCluster {
                    limit,
                    anchor,
                    ratio,
                } => {
                    if lo <= limit + tol(*limit) {
                        if *limit >= lo - tol(lo) && *limit <= hi + tol(*limit) {
                            push(*limit, &mut out)?;
                        }
                        if hi - limit > tol(*limit) {
                            // infinitely many points accumulate above the limit
                            return Err(Error::TooMany { cap });
                        }
                    } else {
                        // finite tail: cluster points in [lo, hi]
                        let top = c.floor_in(hi.min(c.max()));
                        if top >= lo - tol(lo) {
                            let Some(InComponent::ClusterIndex(k_top)) = c.locate(top) else {
                                continue;
                            };
                            let mut k = k_top;
                            loop {
                                let p = ScaleComponent::cluster_point(*limit, *anchor, *ratio, k);
                                if p < lo - tol(lo) {
                                    break;
                                }
                                k += 1;
                                if k - k_top > cap as i64 {
                                    return Err(Error::TooMany { cap });
                                }
                            }
                            for kk in (k_top..k).rev() {
                                push(
                                    ScaleComponent::cluster_point(*limit, *anchor, *ratio, kk),
                                    &mut out,
                                )?;
                            }
                        }
                    }
                }
            }
        }
        // components are emitted in cluster-descending order internally, so
        // restore global ascending order
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(out)
    }

    /// The scale `T ∩ [a, b]` for `a, b` in `T`, `a <= b`.
    pub fn restrict(&self, a: f64, b: f64) -> Result<TimeScale> {
        let a = self.snap(a)?;
        let b = self.snap(b)?;
        if a > b {
            return Err(Error::InvalidScale(format!(
                "restrict expects a <= b, got [{a}, {b}]"
            )));
        }
        let mut comps: Vec<ScaleComponent> = Vec::new();
        for c in &self.components {
            if c.max() < a - tol(a) || c.min() > b + tol(b) {
                continue;
            }
            match c {
                ScaleComponent::IsolatedPoints(p) => {
                    let sel: Vec<f64> = p
                        .iter()
                        .copied()
                        .filter(|x| *x >= a - tol(a) && *x <= b + tol(b))
                        .collect();
                    if !sel.is_empty() {
                        comps.push(ScaleComponent::IsolatedPoints(sel));
                    }
                }
                ScaleComponent::RealInterval { lo, hi } => {
                    let s = lo.max(a);
                    let e = hi.min(b);
                    if close(s, e) {
                        comps.push(ScaleComponent::IsolatedPoints(vec![s]));
                    } else {
                        comps.push(ScaleComponent::RealInterval { lo: s, hi: e });
                    }
                }
                ScaleComponent::GeometricCluster {
                    limit,
                    anchor,
                    ratio,
                } => {
                    if b <= limit + tol(*limit) {
                        comps.push(ScaleComponent::IsolatedPoints(vec![*limit]));
                        continue;
                    }
                    let top = c.floor_in(b.min(c.max()));
                    if a <= limit + tol(*limit) {
                        let new_anchor = top - limit;
                        comps.push(ScaleComponent::GeometricCluster {
                            limit: *limit,
                            anchor: new_anchor,
                            ratio: *ratio,
                        });
                    } else {
                        // clipped tail away from the limit is a finite set
                        let mut pts: Vec<f64> = Vec::new();
                        let Some(InComponent::ClusterIndex(k_top)) = c.locate(top) else {
                            continue;
                        };
                        let mut k = k_top;
                        loop {
                            let p = ScaleComponent::cluster_point(*limit, *anchor, *ratio, k);
                            if p < a - tol(a) {
                                break;
                            }
                            pts.push(p);
                            k += 1;
                        }
                        pts.reverse();
                        if !pts.is_empty() {
                            comps.push(ScaleComponent::IsolatedPoints(pts));
                        }
                    }
                }
            }
        }
        TimeScale::from_components(comps)
    }

    /// Real hull endpoints of the clipped sub-interval `[lo, hi]_box`:
    /// delta gives `(lo, rho(hi))`, nabla gives `(sigma(lo), hi)`.
    pub fn box_subinterval(&self, lo: f64, hi: f64, kind: BoxKind) -> Result<(f64, f64)> {
        let lo = self.snap(lo)?;
        let hi = self.snap(hi)?;
        if !(lo < hi) {
            return Err(Error::InvalidScale(format!(
                "box_subinterval expects lo < hi, got [{lo}, {hi}]"
            )));
        }
        Ok(match kind {
            BoxKind::Delta => (lo, self.rho(hi)?.max(lo)),
            BoxKind::Nabla => (self.sigma(lo)?.min(hi), hi),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zgrid() -> TimeScale {
        TimeScale::uniform(0.0, 3.0, 1.0).unwrap()
    }

    fn q2() -> TimeScale {
        TimeScale::qscale(2.0).unwrap()
    }

    #[test]
    fn qscale_contains_powers_of_half() {
        let t = q2();
        for p in [1.0, 0.5, 0.25, 0.125, 0.0] {
            assert!(t.contains(p), "missing {p}");
        }
        assert!(!t.contains(0.3));
        assert_eq!(t.max(), 1.0);
        assert_eq!(t.min(), 0.0);
    }

    #[test]
    fn qscale_three_halves_tenth_point() {
        let t = TimeScale::qscale(1.5).unwrap();
        let expected = (2.0f64 / 3.0).powi(10);
        assert!(t.contains(expected));
        assert!((t.snap(expected).unwrap() - expected).abs() <= 1e-15);
    }

    #[test]
    fn qscale_rejects_bad_ratio() {
        assert!(matches!(TimeScale::qscale(1.0), Err(Error::InvalidRatio(_))));
        assert!(matches!(TimeScale::qscale(0.5), Err(Error::InvalidRatio(_))));
    }

    #[test]
    fn uniform_grids() {
        let t = zgrid();
        assert_eq!(
            t.enumerate_between(0.0, 3.0, 10).unwrap(),
            vec![0.0, 1.0, 2.0, 3.0]
        );
        let u = TimeScale::uniform(0.0, 1.0, 0.25).unwrap();
        assert_eq!(
            u.enumerate_between(0.0, 1.0, 10).unwrap(),
            vec![0.0, 0.25, 0.5, 0.75, 1.0]
        );
        assert!(matches!(
            TimeScale::uniform(5.0, 5.0 + 1e-9, 1.0),
            Err(Error::NotCommensurate { .. })
        ));
    }

    #[test]
    fn sigma_rho_on_grid() {
        let t = zgrid();
        assert_eq!(t.sigma(1.0).unwrap(), 2.0);
        assert_eq!(t.rho(2.0).unwrap(), 1.0);
        assert_eq!(t.sigma(3.0).unwrap(), 3.0);
        assert_eq!(t.rho(0.0).unwrap(), 0.0);
        assert!(matches!(t.sigma(0.5), Err(Error::NotInScale(_))));
    }

    #[test]
    fn sigma_rho_on_qscale() {
        let t = q2();
        assert_eq!(t.sigma(0.25).unwrap(), 0.5);
        assert_eq!(t.rho(0.5).unwrap(), 0.25);
        // the cluster limit is right-dense
        assert_eq!(t.sigma(0.0).unwrap(), 0.0);
        // oracle: inf over enumerated powers 2^-k tends to 0
        let smallest = (0..=60).map(|k| 0.5f64.powi(k)).fold(f64::MAX, f64::min);
        assert!(smallest > 0.0 && smallest < 1e-15);
    }

    #[test]
    fn rho_across_components() {
        let t = TimeScale::union(vec![
            TimeScale::points(vec![0.0]).unwrap(),
            TimeScale::interval(1.0, 2.0).unwrap(),
        ])
        .unwrap();
        assert_eq!(t.rho(1.0).unwrap(), 0.0);
        assert_eq!(t.sigma(0.0).unwrap(), 1.0);
        assert_eq!(t.mu(1.5).unwrap(), 0.0);
        assert_eq!(t.nu(1.5).unwrap(), 0.0);
    }

    #[test]
    fn graininess() {
        let t = zgrid();
        assert_eq!(t.mu(1.0).unwrap(), 1.0);
        assert_eq!(t.nu(1.0).unwrap(), 1.0);
        let q = q2();
        assert_eq!(q.mu(0.5).unwrap(), 0.5);
        assert_eq!(q.nu(0.5).unwrap(), 0.25);
    }

    #[test]
    fn floor_ceil() {
        let q = q2();
        assert_eq!(q.floor_point(0.3).unwrap(), 0.25);
        assert_eq!(q.ceil_point(0.3).unwrap(), 0.5);
        let z = zgrid();
        assert_eq!(z.floor_point(2.0).unwrap(), 2.0);
        assert_eq!(z.ceil_point(2.0).unwrap(), 2.0);
        let u = TimeScale::union(vec![
            TimeScale::points(vec![0.0]).unwrap(),
            TimeScale::interval(1.0, 2.0).unwrap(),
        ])
        .unwrap();
        assert_eq!(u.floor_point(0.5).unwrap(), 0.0);
        assert_eq!(u.ceil_point(0.5).unwrap(), 1.0);
        assert!(matches!(q.floor_point(-1.0), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn enumerate_qscale() {
        let q = q2();
        assert!(matches!(
            q.enumerate_between(0.0, 1.0, 1000),
            Err(Error::TooMany { .. })
        ));
        assert_eq!(
            q.enumerate_between(0.125, 1.0, 10).unwrap(),
            vec![0.125, 0.25, 0.5, 1.0]
        );
    }

    #[test]
    fn restrict_variants() {
        let q = q2();
        let r = q.restrict(0.25, 1.0).unwrap();
        assert_eq!(
            r.enumerate_between(0.25, 1.0, 10).unwrap(),
            vec![0.25, 0.5, 1.0]
        );
        let z = zgrid();
        assert_eq!(z.restrict(0.0, 3.0).unwrap(), z);

        let u = TimeScale::union(vec![
            TimeScale::points(vec![0.0]).unwrap(),
            TimeScale::interval(1.0, 2.0).unwrap(),
        ])
        .unwrap();
        let ru = u.restrict(1.0, 1.5).unwrap();
        assert!(ru.contains(1.2));
        assert!(!ru.contains(0.0));
        assert_eq!(ru.min(), 1.0);
        assert_eq!(ru.max(), 1.5);

        // restricting a cluster keeps the limit when it stays in range
        let rq = q.restrict(0.0, 0.25).unwrap();
        assert!(rq.contains(0.0));
        assert!(rq.contains(0.25));
        assert!(!rq.contains(0.5));
        assert_eq!(rq.sigma(0.0).unwrap(), 0.0);
    }

    #[test]
    fn box_subintervals() {
        let z = zgrid();
        assert_eq!(z.box_subinterval(1.0, 2.0, BoxKind::Delta).unwrap(), (1.0, 1.0));
        assert_eq!(z.box_subinterval(1.0, 2.0, BoxKind::Nabla).unwrap(), (2.0, 2.0));
        let q = q2();
        assert_eq!(
            q.box_subinterval(0.0, 0.5, BoxKind::Nabla).unwrap(),
            (0.0, 0.5)
        );
    }
}
