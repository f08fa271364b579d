//! Writer for the integer programs in LP text format.
//!
//! Variables are `x_<i>_<j>` (robot `i` on task `j`) and `z_<j>` (task `j`
//! handled), both 1-based. Rows:
//!
//! ```text
//! budget:     sum c_ij x_i_j <= W                      (total)
//! tbudget_j:  sum_i c_ij x_i_j - W z_j <= 0            (per task)
//! rbudget_i:  sum_j c_ij x_i_j <= W                    (per robot)
//! cover_j:    sum_i x_i_j - q_j z_j >= 0
//! robot_i:    sum_j x_i_j <= 1
//! ```

use std::fmt::Write;

use crate::model::{Budget, BudgetKind, Instance};

fn terms(out: &mut String, items: impl Iterator<Item = String>) {
    let mut first = true;
    for t in items {
        if !first {
            out.push_str(" + ");
        }
        first = false;
        out.push_str(&t);
    }
}

pub fn export_lp(inst: &Instance, budget: Budget) -> String {
    let n = inst.robot_count();
    let m = inst.task_count();
    let w = budget.value;
    let mut out = String::new();
    let kind = match budget.kind {
        BudgetKind::Total => "total",
        BudgetKind::PerTask => "per-task",
        BudgetKind::PerRobot => "per-robot",
    };
    let _ = writeln!(out, "\\ max handled tasks, {kind} budget {w}, {n} robots, {m} tasks");
    out.push_str("Maximize\n obj: ");
    if m == 0 {
        out.push('0');
    } else {
        terms(&mut out, (1..=m).map(|j| format!("z_{j}")));
    }
    out.push_str("\nSubject To\n");

    if m > 0 {
        match budget.kind {
            BudgetKind::Total => {
                out.push_str(" budget: ");
                terms(
                    &mut out,
                    (0..n).flat_map(|i| (0..m).map(move |j| (i, j))).map(|(i, j)| {
                        format!("{} x_{}_{}", inst.cost(i, j), i + 1, j + 1)
                    }),
                );
                let _ = writeln!(out, " <= {w}");
            }
            BudgetKind::PerTask => {
                for j in 0..m {
                    let _ = write!(out, " tbudget_{}: ", j + 1);
                    terms(&mut out, (0..n).map(|i| format!("{} x_{}_{}", inst.cost(i, j), i + 1, j + 1)));
                    let _ = writeln!(out, " - {w} z_{} <= 0", j + 1);
                }
            }
            BudgetKind::PerRobot => {
                for i in 0..n {
                    let _ = write!(out, " rbudget_{}: ", i + 1);
                    terms(&mut out, (0..m).map(|j| format!("{} x_{}_{}", inst.cost(i, j), i + 1, j + 1)));
                    let _ = writeln!(out, " <= {w}");
                }
            }
        }
        for j in 0..m {
            let _ = write!(out, " cover_{}: ", j + 1);
            terms(&mut out, (0..n).map(|i| format!("x_{}_{}", i + 1, j + 1)));
            let _ = writeln!(out, " - {} z_{} >= 0", inst.requirement(j), j + 1);
        }
        for i in 0..n {
            let _ = write!(out, " robot_{}: ", i + 1);
            terms(&mut out, (0..m).map(|j| format!("x_{}_{}", i + 1, j + 1)));
            out.push_str(" <= 1\n");
        }
    }

    out.push_str("Binary\n");
    for i in 0..n {
        for j in 0..m {
            let _ = writeln!(out, " x_{}_{}", i + 1, j + 1);
        }
    }
    for j in 0..m {
        let _ = writeln!(out, " z_{}", j + 1);
    }
    out.push_str("End\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example1() -> Instance {
        Instance::symmetric(4, vec![1, 2, 2], vec![100, 1, 1]).unwrap()
    }

    #[test]
    fn total_budget_rows() {
        let lp = export_lp(&example1(), Budget::total(100));
        assert!(lp.contains(" obj: z_1 + z_2 + z_3\n"));
        assert!(lp.contains(" budget: 100 x_1_1 + 1 x_1_2 + 1 x_1_3 + 100 x_2_1 + "));
        assert!(lp.contains(" <= 100\n"));
        assert!(lp.contains(" cover_1: x_1_1 + x_2_1 + x_3_1 + x_4_1 - 1 z_1 >= 0\n"));
        assert!(lp.contains(" cover_2: x_1_2 + x_2_2 + x_3_2 + x_4_2 - 2 z_2 >= 0\n"));
        assert!(lp.contains(" robot_4: x_4_1 + x_4_2 + x_4_3 <= 1\n"));
        assert!(lp.contains("Binary\n x_1_1\n"));
        assert!(lp.ends_with(" z_3\nEnd\n"));
    }

    #[test]
    fn per_task_rows() {
        let lp = export_lp(&example1(), Budget::per_task(7));
        let rows: Vec<&str> = lp.lines().filter(|l| l.starts_with(" tbudget_")).collect();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[1], " tbudget_2: 1 x_1_2 + 1 x_2_2 + 1 x_3_2 + 1 x_4_2 - 7 z_2 <= 0");
        assert!(!lp.contains(" budget:"));
    }

    #[test]
    fn per_robot_rows() {
        let lp = export_lp(&example1(), Budget::per_robot(3));
        assert!(lp.contains(" rbudget_2: 100 x_2_1 + 1 x_2_2 + 1 x_2_3 <= 3\n"));
        assert_eq!(lp.lines().filter(|l| l.starts_with(" rbudget_")).count(), 4);
    }

    #[test]
    fn empty_program() {
        let inst = Instance::new(2, vec![], vec![vec![]; 2]).unwrap();
        let lp = export_lp(&inst, Budget::total(5));
        assert!(lp.contains("Maximize\n obj: 0\nSubject To\nBinary\nEnd\n"));
    }
}
