//! Laurent coefficients of the right-hand side, computed two ways, against the
//! worked examples' closed forms.

use qduality::duality::golden::standard_examples;
use qduality::duality::{beta_table, beta_table_literal};

fn main() -> qduality::Result<()> {
    for ex in standard_examples() {
        let table = beta_table(&ex.params)?;
        let literal = beta_table_literal(&ex.params)?;
        println!(
            "example {} (t = {}): k in {}..={}",
            ex.id,
            ex.params.t(),
            table.k_lo,
            table.k_hi
        );
        for (k, b) in table.iter() {
            let printed = ex.beta.iter().find(|(kk, _)| *kk == k).map(|(_, v)| *v);
            println!(
                "  beta_{k:<2} = {b:.14}  literal {:.14}  closed form {}",
                literal.get(k),
                printed.map_or("0".into(), |v| format!("{v:.14}"))
            );
        }
    }
    Ok(())
}
