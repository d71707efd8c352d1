//! Koszul complexes over Carlsson rings, homology lengths and Betti numbers.

use dkh::complex::{koszul, tensor};
use dkh::MonomialQuotientRing;

fn main() -> dkh::Result<()> {
    for d in 1..=3 {
        let r = MonomialQuotientRing::carlsson(d)?;
        let vars: Vec<_> = (0..d).map(|i| r.var(i)).collect();
        let k = koszul(&r, &vars)?;
        let rep = k.homology();
        println!(
            "d = {d}: ranks {:?}, h = {:?} (total {}), betti {:?}, chi {}",
            k.ranks(),
            rep.h,
            rep.total_h,
            rep.betti,
            rep.chi
        );
    }

    let r = MonomialQuotientRing::truncated(3, 3)?;
    let p = koszul(&r, &[r.var(0)])?;
    let pp = tensor(&p, &p)?;
    println!(
        "over F_3[x]/(x^3): P has h = {:?}, P (x) P has ranks {:?} and h = {:?}",
        p.homology().h,
        pp.ranks(),
        pp.homology().h
    );
    print!("{}", p.to_text());
    Ok(())
}
