//! Difference evaluation: for one agent (or one job) find the best improving
//! 2-exchange against the current assignment.

use crate::model::{Assignment, DeltaTables, ExchangeRecord, Instance};

/// Best exchange for agent `i`: move it to some other job `j'` and hand its
/// current job to `sigma[j']`. Only improvements strictly above `threshold`
/// are recorded; ties go to the smallest job index.
#[inline]
pub(crate) fn scan_agent(
    inst: &Instance,
    asg: &Assignment,
    i: usize,
    threshold: f64,
) -> ExchangeRecord {
    let own = asg.tau()[i];
    let sigma = asg.sigma();
    let gains = asg.gains();
    let row = inst.agent_row(i);
    let own_col = inst.job_column(own);
    let base = gains[own];

    let mut best = threshold;
    let mut partner = usize::MAX;
    for (jp, (&gain, &holder)) in gains.iter().zip(sigma).enumerate() {
        if jp == own {
            continue;
        }
        // Same operand order as `Assignment::exchange_delta`.
        let d = row[jp] + own_col[holder] - base - gain;
        if d > best {
            best = d;
            partner = jp;
        }
    }
    if partner == usize::MAX {
        ExchangeRecord::INACTIVE
    } else {
        ExchangeRecord::improving(partner, best)
    }
}

/// Best exchange for job `j`: hand it to some other agent `i'` whose current
/// job goes to `sigma[j]`. Ties go to the smallest agent index.
#[inline]
pub(crate) fn scan_job(
    inst: &Instance,
    asg: &Assignment,
    j: usize,
    threshold: f64,
) -> ExchangeRecord {
    let holder = asg.sigma()[j];
    let tau = asg.tau();
    let gains = asg.gains();
    let col = inst.job_column(j);
    let holder_row = inst.agent_row(holder);
    let base = gains[j];

    let mut best = threshold;
    let mut partner = usize::MAX;
    for (ip, &jp) in tau.iter().enumerate() {
        if ip == holder {
            continue;
        }
        let d = col[ip] + holder_row[jp] - gains[jp] - base;
        if d > best {
            best = d;
            partner = ip;
        }
    }
    if partner == usize::MAX {
        ExchangeRecord::INACTIVE
    } else {
        ExchangeRecord::improving(partner, best)
    }
}

/// Agent difference evaluation: stores agent `i`'s best strictly improving
/// exchange in `tables.agent_records[i]`, or an inactive record if none exists.
pub fn ade(i: usize, inst: &Instance, asg: &Assignment, tables: &mut DeltaTables) {
    tables.agent_records[i] = scan_agent(inst, asg, i, 0.0);
}

/// Job difference evaluation, the mirror image of [`ade`].
pub fn jde(j: usize, inst: &Instance, asg: &Assignment, tables: &mut DeltaTables) {
    tables.job_records[j] = scan_job(inst, asg, j, 0.0);
}

/// Sequential evaluation of every agent and job.
pub fn evaluate_all(inst: &Instance, asg: &Assignment, tables: &mut DeltaTables) {
    for i in 0..inst.n() {
        ade(i, inst, asg, tables);
    }
    for j in 0..inst.n() {
        jde(j, inst, asg, tables);
    }
}

/// The `(agent, job)` pair to hand to `switch_exchange` for an agent record.
#[inline]
pub(crate) fn agent_move(i: usize, rec: &ExchangeRecord) -> (usize, usize) {
    (i, rec.partner)
}

/// The `(agent, job)` pair to hand to `switch_exchange` for a job record.
#[inline]
pub(crate) fn job_move(j: usize, rec: &ExchangeRecord) -> (usize, usize) {
    (rec.partner, j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{objective, switch_exchange};

    fn inst(rows: &[&[f64]]) -> Instance {
        Instance::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn anti_diagonal_pair() {
        let inst = inst(&[&[0.0, 10.0], &[10.0, 0.0]]);
        let asg = Assignment::identity(&inst);
        let mut t = DeltaTables::new(2);
        ade(0, &inst, &asg, &mut t);
        jde(0, &inst, &asg, &mut t);
        assert_eq!(t.agent_records[0], ExchangeRecord::improving(1, 20.0));
        assert_eq!(t.job_records[0], ExchangeRecord::improving(1, 20.0));
    }

    #[test]
    fn diagonal_dominant_has_no_improvement() {
        let inst = inst(&[&[5.0, 1.0, 1.0], &[1.0, 5.0, 1.0], &[1.0, 1.0, 5.0]]);
        let asg = Assignment::identity(&inst);
        let mut t = DeltaTables::new(3);
        evaluate_all(&inst, &asg, &mut t);
        for r in t.agent_records.iter().chain(&t.job_records) {
            assert!(!r.active);
            assert_eq!(r.delta, 0.0);
        }
    }

    #[test]
    fn all_equal_has_no_improvement() {
        let inst = Instance::new(4, vec![3.0; 16]).unwrap();
        let asg = Assignment::from_sigma(&inst, vec![2, 0, 3, 1]).unwrap();
        let mut t = DeltaTables::new(4);
        evaluate_all(&inst, &asg, &mut t);
        assert!(!t.any_active());
    }

    #[test]
    fn ties_go_to_smallest_index() {
        // Agent 0 gains 2 by moving to job 1 or job 2.
        let inst = inst(&[&[0.0, 1.0, 1.0], &[0.0, 0.0, 0.0], &[0.0, 0.0, 0.0]]);
        let asg = Assignment::from_sigma(&inst, vec![0, 1, 2]).unwrap();
        let mut t = DeltaTables::new(3);
        ade(0, &inst, &asg, &mut t);
        assert_eq!(t.agent_records[0].partner, 1);
        // Job 1 gains by going to agent 0 only.
        jde(1, &inst, &asg, &mut t);
        assert_eq!(t.job_records[1].partner, 0);
        // Job 0 gains 1 by going to agent 1 or agent 2 (agent 0 then takes job 1 or 2).
        jde(0, &inst, &asg, &mut t);
        assert_eq!(t.job_records[0], ExchangeRecord::improving(1, 1.0));
    }

    #[test]
    fn records_match_real_switch_values() {
        let inst = inst(&[
            &[3.0, 1.0, 4.0, 1.0],
            &[5.0, 9.0, 2.0, 6.0],
            &[5.0, 3.0, 5.0, 8.0],
            &[9.0, 7.0, 9.0, 3.0],
        ]);
        let asg = Assignment::from_sigma(&inst, vec![3, 2, 1, 0]).unwrap();
        let mut t = DeltaTables::new(4);
        evaluate_all(&inst, &asg, &mut t);
        let base = objective(&inst, &asg).unwrap();
        for (i, rec) in t.agent_records.iter().enumerate() {
            if rec.active {
                let (a, j) = agent_move(i, rec);
                let next = switch_exchange(a, j, &asg, &inst).unwrap();
                assert!((objective(&inst, &next).unwrap() - base - rec.delta).abs() < 1e-12);
            }
        }
        for (j, rec) in t.job_records.iter().enumerate() {
            if rec.active {
                let (a, jj) = job_move(j, rec);
                let next = switch_exchange(a, jj, &asg, &inst).unwrap();
                assert!((objective(&inst, &next).unwrap() - base - rec.delta).abs() < 1e-12);
            }
        }
    }
}
