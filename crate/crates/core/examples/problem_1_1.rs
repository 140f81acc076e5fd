//! Build the equilateral triangle by hand with the production and
//! deduction operations, then print the production graph and the
//! derivation of the last equality.

use euclid_kernel::deduction::{
    apply_cn, holds, provenance, radii_equal, CircleLabel, CommonNotion, Judgment, Magnitude,
};
use euclid_kernel::naming::NameKind;
use euclid_kernel::production::{Environment, Phase};

fn main() -> euclid_kernel::Result<()> {
    let mut env = Environment::new();
    env.register_given(NameKind::Segment, "AB")?;

    env.set_phase(Phase::Construction);
    let (c1, c2) = (CircleLabel("c1".into()), CircleLabel("c2".into()));
    env.apply_circle(c1.clone(), 'A', "AB")?;
    env.apply_circle(c2.clone(), 'B', "BA")?;
    // both circles have radius AB, so they meet
    env.apply_meet(&c1, &c2, 'C')?;
    env.apply_line('C', 'A')?;
    env.apply_line('C', 'B')?;

    env.set_phase(Phase::Proof);
    let s1 = radii_equal(&mut env, &c1, "AC", "AB")?;
    let s2 = radii_equal(&mut env, &c2, "BC", "BA")?;
    let seg = |s: &str| Magnitude::segment(s);
    let s3 = apply_cn(
        &mut env,
        CommonNotion::Cn1,
        &[s1, s2],
        Judgment::equal(seg("CA")?, seg("CB")?)?,
    )?;

    println!("production:");
    for node in env.production_trace().nodes {
        println!(
            "  {}({}) -> {}",
            node.op,
            node.inputs.join(", "),
            node.outputs.join(", ")
        );
    }
    println!("\nderivation:\n{}", provenance(&env, s3)?.render());

    // nothing is derived behind the scenes
    let refl = Judgment::equal(seg("AB")?, seg("AB")?)?;
    println!("AB = AB recorded: {}", holds(&env, &refl).is_some());

    // the linking principle: no circle about C until C exists
    let mut early = Environment::new();
    early.register_given(NameKind::Segment, "AB")?;
    if let Err(e) = early.apply_line('C', 'A') {
        println!("line(C, A) before C exists: {e}");
    }
    Ok(())
}
