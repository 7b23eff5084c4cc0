use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinkChoice {
    Cut,
    Remote,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateDecision {
    /// 1-based gate position.
    pub gate: usize,
    pub choice: LinkChoice,
    /// Equal share S_i of the remaining budget.
    pub tentative_shots: u64,
    /// Shots actually spent; zero for a remote gate.
    pub shots: u64,
    /// The equal share fell short and no Bell pair was available.
    pub escalated: bool,
    /// No affordable allocation reaches the link's remote fidelity.
    pub infeasible: bool,
    pub remaining_after: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinkPlan {
    pub s_total: u64,
    pub decisions: Vec<GateDecision>,
    pub remaining: u64,
}

impl LinkPlan {
    pub fn spent(&self) -> u64 {
        self.decisions.iter().map(|d| d.shots).sum()
    }
}

/// Greedy cut-or-remote choice per gate. Gate i first takes the equal share
/// S_i = S_0 / (N − i + 1) of the remaining budget S_0 and is cut if
/// F_cut(S_i) ≥ F_remote^i; otherwise it goes remote if a Bell pair is
/// available; otherwise it is cut with S_i′, the smallest `escalation_grid`
/// value reaching F_remote^i within budget, or the whole remaining budget
/// (flagged infeasible) when none does.
pub fn greedy_schedule(
    n_gates: usize,
    s_total: u64,
    f_cut: &dyn Fn(u64) -> f64,
    f_remote: &[f64],
    bell_available: &[bool],
    escalation_grid: &[u64],
) -> Result<LinkPlan> {
    if n_gates == 0 || s_total < n_gates as u64 {
        return Err(Error::Parameter(format!("{n_gates} gates with budget {s_total}")));
    }
    if f_remote.len() != n_gates || bell_available.len() != n_gates {
        return Err(Error::Dimension(format!(
            "{n_gates} gates, {} remote fidelities, {} availability flags",
            f_remote.len(),
            bell_available.len()
        )));
    }
    let mut grid = escalation_grid.to_vec();
    grid.sort_unstable();
    let mut s0 = s_total;
    let mut decisions = Vec::with_capacity(n_gates);
    for i in 0..n_gates {
        let share = s0 / (n_gates - i) as u64;
        let target = f_remote[i];
        let mut d = GateDecision {
            gate: i + 1,
            choice: LinkChoice::Cut,
            tentative_shots: share,
            shots: share,
            escalated: false,
            infeasible: false,
            remaining_after: 0,
        };
        if f_cut(share) >= target {
            s0 -= share;
        } else if bell_available[i] {
            d.choice = LinkChoice::Remote;
            d.shots = 0;
        } else {
            d.escalated = true;
            match grid.iter().copied().find(|&g| f_cut(g) >= target && g <= s0) {
                Some(g) => d.shots = g,
                None => {
                    d.shots = s0;
                    d.infeasible = true;
                }
            }
            s0 -= d.shots;
        }
        d.remaining_after = s0;
        decisions.push(d);
    }
    Ok(LinkPlan { s_total, decisions, remaining: s0 })
}
