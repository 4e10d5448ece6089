//! Deterministic rate and count tables.

use ssa_core::block::benerjee_set;
use ssa_core::composition::{char_root, CountTable};
use ssa_core::oracle::capacity_upper_bound;

use crate::errors::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Rows,
}

/// One line per window length m: the characteristic root, the implied
/// asymptotic rate, and the capacity upper bounds; plus the fixed baseline
/// codebook whenever its block length 2 falls in the range.
pub fn rates(m_min: usize, m_max: usize, format: Format) -> Result<String, CliError> {
    if m_min < 2 || m_min > m_max {
        return Err(CliError::Usage("rates need 2 <= m-min <= m-max".into()));
    }
    if m_max > ssa_core::oracle::EXHAUSTIVE_MAX_M {
        return Err(CliError::Usage(format!(
            "capacity bounds are exhaustive only up to m = {}",
            ssa_core::oracle::EXHAUSTIVE_MAX_M
        )));
    }
    let mut rows = Vec::new();
    if m_min <= 2 {
        let set = benerjee_set();
        let bound = capacity_upper_bound(set.m()).expect("m = 2 in regime");
        rows.push((
            "benerjee".to_string(),
            set.m(),
            format!("{}", set.size()),
            set.rate(),
            bound.trivial,
            bound.exact,
        ));
    }
    for m in m_min..=m_max {
        let root = char_root(m);
        let bound = capacity_upper_bound(m).expect("m in regime");
        rows.push((
            "composition".to_string(),
            m,
            format!("{:.6}", root.lambda),
            root.rate,
            bound.trivial,
            bound.exact,
        ));
    }
    let mut out = String::new();
    match format {
        Format::Rows => {
            for (label, m, value, rate, trivial, exact) in rows {
                out.push_str(&format!(
                    "{label} {m} {value} {rate:.6} {trivial:.6} {exact:.6}\n"
                ));
            }
        }
        Format::Text => {
            out.push_str("label        m  value     rate      bound(trivial)  bound(exact)\n");
            for (label, m, value, rate, trivial, exact) in rows {
                out.push_str(&format!(
                    "{label:<12} {m}  {value:<9} {rate:<9.6} {trivial:<15.6} {exact:.6}\n"
                ));
            }
        }
    }
    Ok(out)
}

/// |C_n(m)| for n in the requested range, one row per n.
pub fn counts(m: usize, n_min: usize, n_max: usize, format: Format) -> Result<String, CliError> {
    if m == 0 || n_min > n_max {
        return Err(CliError::Usage(
            "counts need m >= 1 and n-min <= n-max".into(),
        ));
    }
    let table = CountTable::new(m, n_max).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut out = String::new();
    if format == Format::Text {
        out.push_str(&format!("n  |C_n({m})|\n"));
    }
    for n in n_min..=n_max {
        match format {
            Format::Rows => out.push_str(&format!("{n} {}\n", table.count(n))),
            Format::Text => out.push_str(&format!("{n:<2} {}\n", table.count(n))),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_rows_reproduce_small_values() {
        let out = counts(3, 1, 4, Format::Rows).unwrap();
        assert_eq!(out, "1 3\n2 9\n3 19\n4 49\n");
    }

    #[test]
    fn rates_rows_contain_baseline_and_m3() {
        let out = rates(2, 3, Format::Rows).unwrap();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with("benerjee 2 5 1.160964"));
        assert!(lines[1].starts_with("composition 2 2.000000 1.000000 1.500000 1.292481"));
        assert!(lines[2].starts_with("composition 3 2.467504 1.303052 1.666667 1.666667"));
    }

    #[test]
    fn range_validation() {
        assert!(rates(1, 3, Format::Rows).is_err());
        assert!(rates(2, 9, Format::Rows).is_err());
        assert!(counts(0, 0, 4, Format::Rows).is_err());
    }
}
