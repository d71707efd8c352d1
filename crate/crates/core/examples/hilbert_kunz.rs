//! Hilbert-Kunz and Dutta multiplicity tables.

use dkh::complex::koszul;
use dkh::multiplicity::{dutta_koszul, dutta_sequence, hilbert_kunz, MonomialIdeal};
use dkh::MonomialQuotientRing;

fn main() -> dkh::Result<()> {
    let i = MonomialIdeal::parse("2 0; 0 3")?;
    let hk = hilbert_kunz(&i, 2, 6)?;
    for row in &hk.rows {
        println!("e = {}: length {:?}, normalized {}", row.e, row.length, row.normalized);
    }
    println!("limit {} (exact: {})", hk.limit, hk.exact);

    let k = dutta_koszul(2, i.gens(), 4)?;
    println!(
        "Koszul route: limit {}, h per e {:?}",
        k.limit,
        k.rows.iter().map(|r| r.h.clone()).collect::<Vec<_>>()
    );

    let r = MonomialQuotientRing::truncated(2, 4)?;
    let p = koszul(&r, &[r.var(0)])?;
    let a = dutta_sequence(&p, 3)?;
    println!(
        "Artinian route over F_2[x]/(x^4): normalized {:?}",
        a.rows.iter().map(|r| r.normalized.to_string()).collect::<Vec<_>>()
    );

    let mixed = MonomialIdeal::parse("3 0; 1 1; 0 2")?;
    println!("colength of (x^3, xy, y^2): {}", mixed.colength()?);
    Ok(())
}
