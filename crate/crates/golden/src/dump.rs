//! Tab-separated dumps of the weight tables and coefficient expansions.

use std::io::{self, Write};

use golden_core::{ArithFnTable, TruncatedRationalSeries};

/// `n<TAB>φ(n)<TAB>μ(n)` for `1 ≤ n ≤ limit`.
pub fn write_sieve<W: Write + ?Sized>(out: &mut W, table: &ArithFnTable) -> io::Result<()> {
    for n in 1..=table.limit() {
        let phi = table.totient(n).expect("within limit");
        let mu = table.moebius(n).expect("within limit");
        writeln!(out, "{n}\t{phi}\t{mu}")?;
    }
    Ok(())
}

/// `n<TAB>p/q` per coefficient.
pub fn write_coefficients<W: Write + ?Sized>(out: &mut W, series: &TruncatedRationalSeries) -> io::Result<()> {
    for (n, c) in series.iter() {
        writeln!(out, "{n}\t{c}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use golden_core::{expand_double_sum, Weight};

    #[test]
    fn sieve_lines() {
        let t = ArithFnTable::build(4).unwrap();
        let mut buf = Vec::new();
        write_sieve(&mut buf, &t).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "1\t1\t1\n2\t1\t-1\n3\t2\t-1\n4\t2\t0\n");
    }

    #[test]
    fn coefficient_lines() {
        let t = ArithFnTable::build(3).unwrap();
        let s = expand_double_sum(Weight::Moebius, 3, &t).unwrap();
        let mut buf = Vec::new();
        write_coefficients(&mut buf, &s).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "1\t1/1\n2\t0/1\n3\t0/1\n");
    }
}
