//! Dold-Kan extensions of T², S², Λ² and the Frobenius.

use dkh::complex::{koszul, tensor};
use dkh::dold_kan::{compare_frobenius, extend, FunctorTag};
use dkh::MonomialQuotientRing;

fn main() -> dkh::Result<()> {
    let r = MonomialQuotientRing::carlsson(2)?;
    let p = koszul(&r, &[r.var(0), r.var(1)])?;
    for tag in FunctorTag::ALL {
        let g = extend(tag, &p)?;
        println!("{tag}: ranks {:?}, h {:?}", g.ranks(), g.homology().h);
    }
    println!("P (x) P: h {:?}", tensor(&p, &p)?.homology().h);

    let cmp = compare_frobenius(&p)?;
    println!(
        "Frobenius comparison: ranks {}, homology {}, transforms invertible {}, matrices {}",
        cmp.ranks_agree, cmp.homology_agree, cmp.transforms_invertible, cmp.matrices_agree
    );
    Ok(())
}
