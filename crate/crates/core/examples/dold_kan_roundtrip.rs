//! Γ then N recovers a complex up to isomorphism.

use dkh::complex::random_complex;
use dkh::dold_kan::{gamma, normalize, Surjection};
use dkh::MonomialQuotientRing;

fn main() -> dkh::Result<()> {
    println!("surjections out of [3]:");
    for s in Surjection::all(3) {
        println!("  {:?} -> [{}]", s.values(), s.target());
    }

    let r = MonomialQuotientRing::carlsson(2)?;
    let p = random_complex(&r, &[1, 2, 1], 3, true)?;
    let s = gamma(&p, 4)?;
    s.check_identities()?;
    println!("Γ(P) level ranks: {:?}", s.level_ranks());
    let n = normalize(&s, p.top())?;
    println!("P:     ranks {:?}, h {:?}", p.ranks(), p.homology().h);
    println!("N Γ P: ranks {:?}, h {:?}", n.ranks(), n.homology().h);
    assert_eq!(n.homology(), p.homology());
    Ok(())
}
