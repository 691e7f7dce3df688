//! Rank certificates: an affine rank per state class that strictly moves
//! in one direction along every edge except the self-loops at fixed states.

use super::affine::{AffineForm, Interval};
use super::{EdgeRule, GeneratedGraph, Result, State, WanderingError};

/// Cap on the number of parameter points enumerated per rule when the rank
/// fails to move on a finite region.
const EXCEPTION_LIMIT: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Direction::Increasing => "increasing",
            Direction::Decreasing => "decreasing",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim() {
            "increasing" => Some(Direction::Increasing),
            "decreasing" => Some(Direction::Decreasing),
            _ => None,
        }
    }

    fn sign(self) -> i128 {
        match self {
            Direction::Increasing => 1,
            Direction::Decreasing => -1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankCertificate {
    /// One affine form per state class, over that class's index variables.
    pub ranks: Vec<AffineForm>,
    pub direction: Direction,
    /// States whose self-loops are exempt; must equal the fixed states.
    pub exceptions: Vec<State>,
}

impl RankCertificate {
    pub fn rank(&self, s: &State) -> i64 {
        self.ranks[s.class].eval(&s.index)
    }

    fn validate(&self, g: &GeneratedGraph) -> Result<()> {
        if self.ranks.len() != g.classes().len() {
            return Err(WanderingError::BadCertificate(format!(
                "{} rank forms for {} classes",
                self.ranks.len(),
                g.classes().len()
            )));
        }
        for (f, c) in self.ranks.iter().zip(g.classes()) {
            if f.coeffs.len() != c.dims() {
                return Err(WanderingError::BadCertificate(format!("rank for {} has wrong arity", c.name)));
            }
        }
        let mut ex = self.exceptions.clone();
        ex.sort();
        ex.dedup();
        if ex != g.fixed() {
            return Err(WanderingError::BadCertificate(
                "exception states must be exactly the fixed states".into(),
            ));
        }
        Ok(())
    }

    /// Checks every rule symbolically. Edges with a non-moving rank must be
    /// finitely many and either fixed-state self-loops or `exempt`.
    /// Returns the number of excepted edges.
    pub(crate) fn check_rules(&self, g: &GeneratedGraph, exempt: &dyn Fn(&State) -> bool) -> Result<usize> {
        self.validate(g)?;
        let mut excepted = 0;
        for r in g.rules() {
            excepted += self.check_rule(g, r, exempt)?;
        }
        Ok(excepted)
    }

    fn check_rule(&self, g: &GeneratedGraph, r: &EdgeRule, exempt: &dyn Fn(&State) -> bool) -> Result<usize> {
        let fail = |why: String| WanderingError::BadCertificate(format!("rule `{}`: {why}", g.render_rule(r)));
        let np = r.params.len();
        // feasible parameter box: guard, then the class domains of both sides
        let mut boxes: Vec<Interval> = r.guard.clone();
        for (class, coords) in [(r.source, &r.source_index), (r.target, &r.target_index)] {
            for (c, dom) in coords.iter().zip(&g.classes()[class].domain) {
                match c.param {
                    Some(j) => boxes[j] = boxes[j].intersect(&dom.preimage(c.coef, c.offset)),
                    None if !dom.contains(c.offset) => return Ok(0),
                    None => {}
                }
            }
        }
        if boxes.iter().any(Interval::is_empty) {
            return Ok(0);
        }
        // diff(p) = sign * (rank(target) - rank(source)) = Σ alpha_j p_j + beta
        let sign = self.direction.sign();
        let mut alpha = vec![0i128; np];
        let mut beta: i128 = 0;
        for (class, coords, s) in [(r.target, &r.target_index, 1i128), (r.source, &r.source_index, -1i128)] {
            let form = &self.ranks[class];
            beta += s * form.constant as i128;
            for (c, &w) in coords.iter().zip(&form.coeffs) {
                let w = w as i128;
                beta += s * w * c.offset as i128;
                if let Some(j) = c.param {
                    alpha[j] += s * w * c.coef as i128;
                }
            }
        }
        for a in alpha.iter_mut() {
            *a *= sign;
        }
        beta *= sign;
        // minimum over the box, and the corner attaining it
        let mut corner = vec![0i128; np];
        let mut min = beta;
        for j in 0..np {
            let b = &boxes[j];
            let v = match alpha[j].signum() {
                1 => b.lo.ok_or_else(|| fail(format!("rank is unbounded along {}", r.params[j])))?,
                -1 => b.hi.ok_or_else(|| fail(format!("rank is unbounded along {}", r.params[j])))?,
                _ => b.lo.or(b.hi).unwrap_or(0),
            } as i128;
            corner[j] = v;
            min += alpha[j] * v;
        }
        if min >= 1 {
            return Ok(0);
        }
        // the region diff <= 0 must be finite; enumerate it
        let budget = -min;
        let mut ranges = Vec::with_capacity(np);
        let mut size: u128 = 1;
        for j in 0..np {
            let (lo, hi) = if alpha[j] == 0 {
                match (boxes[j].lo, boxes[j].hi) {
                    (Some(l), Some(h)) => (l as i128, h as i128),
                    _ => return Err(fail(format!("rank is constant along unbounded {}", r.params[j]))),
                }
            } else {
                let reach = budget / alpha[j].abs();
                let (l, h) = if alpha[j] > 0 {
                    (corner[j], corner[j] + reach)
                } else {
                    (corner[j] - reach, corner[j])
                };
                let l = boxes[j].lo.map_or(l, |b| l.max(b as i128));
                let h = boxes[j].hi.map_or(h, |b| h.min(b as i128));
                (l, h)
            };
            size = size.saturating_mul((hi - lo + 1).max(0) as u128);
            ranges.push((lo, hi));
        }
        if size > EXCEPTION_LIMIT {
            return Err(fail(format!("{size} parameter points fail to move the rank")));
        }
        let mut excepted = 0;
        let mut p: Vec<i128> = ranges.iter().map(|&(l, _)| l).collect();
        if ranges.iter().any(|&(l, h)| l > h) {
            return Ok(0);
        }
        loop {
            let diff: i128 = beta + alpha.iter().zip(&p).map(|(a, v)| a * v).sum::<i128>();
            if diff <= 0 {
                let pi: Vec<i64> = p.iter().map(|&v| v as i64).collect();
                let s = State::new(r.source, r.source_index.iter().map(|c| c.eval(&pi)).collect());
                let t = State::new(r.target, r.target_index.iter().map(|c| c.eval(&pi)).collect());
                let fixed_loop = s == t && self.exceptions.contains(&s);
                if !(fixed_loop || exempt(&s) || exempt(&t)) {
                    return Err(fail(format!(
                        "edge {} -> {} does not move the rank",
                        g.display(&s),
                        g.display(&t)
                    )));
                }
                excepted += 1;
            }
            let mut k = np;
            loop {
                if k == 0 {
                    return Ok(excepted);
                }
                k -= 1;
                if p[k] < ranges[k].1 {
                    p[k] += 1;
                    for (j, v) in p.iter_mut().enumerate().skip(k + 1) {
                        *v = ranges[j].0;
                    }
                    break;
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// No cycles except fixed-state self-loops, on the whole graph.
    TotallyWandering {
        truncation_states: usize,
        excepted_edges: usize,
    },
    /// A cycle found in the truncation, as state names in order.
    Counterexample { cycle: Vec<String> },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::TotallyWandering { .. })
    }
}

/// Decides total wandering: a cycle in the truncation other than a fixed
/// self-loop is a counterexample; otherwise the certificate must prove that
/// no such cycle exists anywhere.
pub fn totally_wandering(g: &GeneratedGraph, cert: &RankCertificate, radius: u64) -> Result<Verdict> {
    cert.validate(g)?;
    let t = g.truncate(radius)?;
    for comp in t.cyclic_components() {
        let lone_fixed = comp.len() == 1 && g.fixed().contains(&t.states[comp[0]]);
        if !lone_fixed {
            let cycle = t.cycle_in(&comp).into_iter().map(|i| t.names[i].clone()).collect();
            return Ok(Verdict::Counterexample { cycle });
        }
    }
    let excepted_edges = cert.check_rules(g, &|_| false)?;
    Ok(Verdict::TotallyWandering {
        truncation_states: t.len(),
        excepted_edges,
    })
}
