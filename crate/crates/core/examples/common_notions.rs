//! Common Notions as rules of inference: the remainder step on two
//! produced sides of an isosceles triangle.

use euclid_kernel::deduction::{
    apply_cn, assert_hypothesis, holds, provenance, CommonNotion, Judgment, Magnitude,
};
use euclid_kernel::naming::NameKind;
use euclid_kernel::production::{Environment, Phase};

fn seg(s: &str) -> Magnitude {
    Magnitude::segment(s).expect("segment name")
}

fn main() -> euclid_kernel::Result<()> {
    let mut env = Environment::new();
    env.register_given(NameKind::Polygon, "ABC")?;
    let ab_ac = assert_hypothesis(&mut env, Judgment::equal(seg("AB"), seg("AC"))?)?;
    env.apply_extend("AB", 'B', 'D')?;
    env.apply_extend("AC", 'C', 'E')?;
    let ad_ae = assert_hypothesis(&mut env, Judgment::equal(seg("AD"), seg("AE"))?)?;

    env.set_phase(Phase::Proof);
    // producing a side records the whole as the sum of its parts
    let d1 = holds(&env, &Judgment::sum(seg("AD"), seg("AB"), seg("BD"))?).expect("chain fact");
    let d2 = holds(&env, &Judgment::sum(seg("AE"), seg("AC"), seg("CE"))?).expect("chain fact");

    let rest = apply_cn(
        &mut env,
        CommonNotion::Cn3,
        &[d1, d2, ad_ae, ab_ac],
        Judgment::equal(seg("BD"), seg("CE"))?,
    )?;
    println!("{}", provenance(&env, rest)?.render());

    let greater = apply_cn(
        &mut env,
        CommonNotion::Cn5,
        &[d1],
        Judgment::greater(seg("AD"), seg("BD"))?,
    )?;
    println!("{}", provenance(&env, greater)?.render());

    // premises in the wrong slots are refused
    let wrong = apply_cn(
        &mut env,
        CommonNotion::Cn3,
        &[d1, d2, ab_ac, ad_ae],
        Judgment::equal(seg("BD"), seg("CE"))?,
    );
    println!("swapped premises: {}", wrong.unwrap_err());

    // sizes of different sorts never mix
    let angle = Magnitude::angle("ABC")?;
    println!(
        "segment = angle: {}",
        Judgment::equal(seg("AB"), angle).unwrap_err()
    );
    Ok(())
}
