//! The inequalities behind the main theorem on explicit two-term data.

use dkh::harness::check_thma;
use dkh::MonomialQuotientRing;

fn main() -> dkh::Result<()> {
    let r = MonomialQuotientRing::truncated(2, 2)?;
    let free = check_thma(&r, &[], false)?;
    println!("M = R: {:?} {:?}", free.status, free.quantities);

    match check_thma(&r, &[r.var(0)], false) {
        Ok(_) => unreachable!(),
        Err(e) => println!("M = R/(x) rejected: {e}"),
    }
    for a in [2, 4] {
        let r = MonomialQuotientRing::truncated(2, a)?;
        let o = check_thma(&r, &[r.var(0)], true)?;
        println!(
            "M = R/(x) over F_2[x]/(x^{a}), raw: h(P(x)P) = {}, l(F M) + 2 l(Λ²M) = {}, {:?}",
            o.quantities["h_pp"], o.quantities["tensor_bound_rhs"], o.status
        );
    }
    Ok(())
}
