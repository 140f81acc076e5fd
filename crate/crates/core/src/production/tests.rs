use super::*;
use crate::naming::NameError;

fn seg(s: &str) -> Magnitude {
    Magnitude::segment(s).unwrap()
}

fn cl(s: &str) -> CircleLabel {
    CircleLabel(s.to_string())
}

fn with_segment(raw: &str) -> Environment {
    let mut env = Environment::new();
    env.register_given(NameKind::Segment, raw).unwrap();
    env
}

fn chain_of(env: &Environment, p: char) -> String {
    let i = env.chain_with(&[p]).unwrap();
    env.chains()[i].points.iter().collect()
}

#[test]
fn given_segment_registers_points_and_chain() {
    let env = with_segment("AB");
    assert!(env.has_point('A') && env.has_point('B'));
    assert_eq!(env.registry_len(), 3);
    assert_eq!(chain_of(&env, 'A'), "AB");
}

#[test]
fn given_triangle_registers_sides_and_angles() {
    let mut env = Environment::new();
    env.register_given(NameKind::Polygon, "ABC").unwrap();
    assert_eq!(env.registry_len(), 3 + 3 + 3 + 1);
    for a in ["BAC", "ABC", "ACB"] {
        let name = canonicalize(NameKind::Angle, a).unwrap();
        assert!(env.lookup(&name).is_some(), "{a}");
    }
}

#[test]
fn degenerate_given_is_rejected() {
    let err = Environment::new()
        .register_given(NameKind::Segment, "AA")
        .unwrap_err();
    assert!(matches!(
        err,
        KernelError::Name(NameError::RepeatedLetter { .. })
    ));
}

#[test]
fn duplicate_given_is_rejected() {
    let mut env = with_segment("AB");
    let err = env.register_given(NameKind::Segment, "BA").unwrap_err();
    assert!(matches!(err, KernelError::DuplicateObjectName(_)));
}

#[test]
fn line_is_idempotent() {
    let mut env = Environment::new();
    env.register_given(NameKind::Point, "A").unwrap();
    env.register_given(NameKind::Point, "B").unwrap();
    let first = env.apply_line('A', 'B').unwrap();
    let size = env.registry_len();
    let second = env.apply_line('B', 'A').unwrap();
    assert_eq!(first, second);
    assert_eq!(env.registry_len(), size);
}

#[test]
fn line_rejects_degenerate_and_unknown() {
    let mut env = with_segment("AB");
    assert_eq!(
        env.apply_line('A', 'A'),
        Err(KernelError::DegenerateSegment('A'))
    );
    assert_eq!(
        env.apply_line('A', 'Z'),
        Err(KernelError::UnknownPoint('Z'))
    );
}

#[test]
fn extend_appends_and_decomposes() {
    let mut env = with_segment("AB");
    env.apply_extend("AB", 'B', 'D').unwrap();
    assert_eq!(chain_of(&env, 'A'), "ABD");
    let con = Judgment::sum(seg("AD"), seg("AB"), seg("BD")).unwrap();
    assert!(env.exact(&con).is_some());
    assert!(env.is_free_end('D'));
}

#[test]
fn extend_at_the_front() {
    let mut env = with_segment("AB");
    env.apply_extend("AB", 'A', 'X').unwrap();
    assert_eq!(chain_of(&env, 'A'), "XAB");
    assert!(env
        .exact(&Judgment::sum(seg("BX"), seg("AX"), seg("AB")).unwrap())
        .is_some());
}

#[test]
fn extend_rejects_reused_letter_and_interior_point() {
    let mut env = with_segment("AB");
    assert_eq!(
        env.apply_extend("AB", 'B', 'A'),
        Err(KernelError::NameCollision('A'))
    );
    env.apply_extend("AB", 'B', 'D').unwrap();
    let err = env.apply_extend("AB", 'B', 'E').unwrap_err();
    assert!(matches!(err, KernelError::NotChainEnd { point: 'B', .. }));
}

#[test]
fn circle_center_must_be_an_endpoint() {
    let mut env = with_segment("AB");
    env.register_given(NameKind::Point, "C").unwrap();
    env.apply_circle(cl("c1"), 'A', "AB").unwrap();
    env.apply_circle(cl("c2"), 'B', "BA").unwrap();
    let err = env.apply_circle(cl("c3"), 'C', "AB").unwrap_err();
    assert!(matches!(
        err,
        KernelError::CenterNotOnRadius { center: 'C', .. }
    ));
    assert!(matches!(
        env.apply_circle(cl("c4"), 'A', "XY"),
        Err(KernelError::UnknownSegment(_))
    ));
}

#[test]
fn meet_needs_a_common_radius() {
    let mut env = with_segment("AB");
    env.apply_circle(cl("c1"), 'A', "AB").unwrap();
    env.apply_circle(cl("c2"), 'B', "BA").unwrap();
    env.apply_meet(&cl("c1"), &cl("c2"), 'C').unwrap();
    assert!(env.exact(&Judgment::on('C', cl("c1"))).is_some());
    assert!(env.exact(&Judgment::on('C', cl("c2"))).is_some());
    assert!(matches!(
        env.apply_meet(&cl("c1"), &cl("c1"), 'X'),
        Err(KernelError::SameCircle(_))
    ));

    env.register_given(NameKind::Segment, "PQ").unwrap();
    env.apply_circle(cl("c3"), 'P', "PQ").unwrap();
    assert!(matches!(
        env.apply_meet(&cl("c1"), &cl("c3"), 'X'),
        Err(KernelError::NoCommonRadius(..))
    ));
}

#[test]
fn pick_splits_the_segment() {
    let mut env = with_segment("AB");
    env.apply_extend("AB", 'B', 'D').unwrap();
    env.pick_on("BD", 'F').unwrap();
    assert_eq!(chain_of(&env, 'A'), "ABFD");
    for (w, x, y) in [("BD", "BF", "DF"), ("AF", "AB", "BF"), ("AD", "AF", "DF")] {
        assert!(
            env.exact(&Judgment::sum(seg(w), seg(x), seg(y)).unwrap())
                .is_some(),
            "{w}"
        );
    }
    assert!(env.segment_constructed('A', 'F'));
    assert_eq!(env.pick_on("AB", 'A'), Err(KernelError::NameCollision('A')));
}

#[test]
fn pick_needs_adjacent_endpoints() {
    let mut env = with_segment("AB");
    env.apply_extend("AB", 'B', 'D').unwrap();
    assert!(matches!(
        env.pick_on("AD", 'F'),
        Err(KernelError::AmbiguousPlacement { .. })
    ));
}

#[test]
fn diagram_posits_only_decompositions() {
    let mut env = Environment::new();
    env.register_given(NameKind::Polygon, "ABC").unwrap();
    let eq = Judgment::equal(seg("AB"), seg("AC")).unwrap();
    assert!(matches!(
        env.record_diagram(eq),
        Err(KernelError::NotADecomposition(_))
    ));
    let unknown = Judgment::sum(seg("AB"), seg("AX"), seg("XB")).unwrap();
    assert!(matches!(
        env.record_diagram(unknown),
        Err(KernelError::UnknownObject(_))
    ));
}

#[test]
fn free_end_exceeds_anything_until_pinned() {
    let mut env = with_segment("AB");
    env.register_given(NameKind::Segment, "PQ").unwrap();
    env.apply_extend("AB", 'B', 'D').unwrap();
    assert!(env.exceeds(&seg("AD"), &seg("PQ")));
    assert!(!env.exceeds(&seg("PQ"), &seg("AD")));
    env.push_fact(
        Judgment::equal(seg("AD"), seg("PQ")).unwrap(),
        Provenance::ByHypothesis { step: StepId(0) },
    );
    assert!(!env.exceeds(&seg("AD"), &seg("PQ")));
}

#[test]
fn cut_places_by_comparison() {
    // A-B-D with AB = PQ and a circle about A of radius AX, AX = PQ + something
    let mut env = with_segment("AB");
    env.apply_extend("AB", 'B', 'D').unwrap();
    env.register_given(NameKind::Segment, "AX").unwrap();
    env.apply_circle(cl("c"), 'A', "AX").unwrap();
    // nothing relates AX to AB: the cut point cannot be placed
    let err = env.apply_cut("AD", &cl("c"), 'K').unwrap_err();
    assert!(
        matches!(err, KernelError::AmbiguousPlacement { point: 'K', .. }),
        "{err:?}"
    );
    assert!(!env.has_point('K'));
}

#[test]
fn cut_requires_the_longer_segment() {
    let mut env = with_segment("AB");
    env.register_given(NameKind::Segment, "AX").unwrap();
    env.apply_circle(cl("c"), 'A', "AX").unwrap();
    assert!(matches!(
        env.apply_cut("AB", &cl("c"), 'K'),
        Err(KernelError::UnsatisfiedHypothesis(_))
    ));
    env.push_fact(
        Judgment::greater(seg("AB"), seg("AX")).unwrap(),
        Provenance::ByHypothesis { step: StepId(0) },
    );
    env.apply_cut("AB", &cl("c"), 'K').unwrap();
    assert_eq!(chain_of(&env, 'B'), "AKB");
    assert!(env.exact(&Judgment::on('K', cl("c"))).is_some());
}

#[test]
fn derived_problem_imports_its_goals() {
    let schema = ProblemSchema {
        number: "1.1".parse().unwrap(),
        givens: vec![crate::schema::SchemaGiven::Object {
            kind: NameKind::Segment,
            letters: "AB".into(),
        }],
        hypotheses: vec![],
        produced: crate::schema::Produced {
            kind: NameKind::Polygon,
            letters: "ABC".into(),
            on: None,
        },
        goals: vec![
            Judgment::equal(seg("CA"), seg("AB")).unwrap(),
            Judgment::equal(seg("CB"), seg("AB")).unwrap(),
        ],
    };
    let mut env = with_segment("PQ");
    let before = env.facts().len();
    env.apply_derived(&schema, &["PQ".into()], &['R']).unwrap();
    assert!(env
        .exact(&Judgment::equal(seg("PR"), seg("PQ")).unwrap())
        .is_some());
    assert!(env
        .exact(&Judgment::equal(seg("QR"), seg("PQ")).unwrap())
        .is_some());
    assert_eq!(env.facts().len(), before + 2);
    assert!(env
        .lookup(&canonicalize(NameKind::Polygon, "PQR").unwrap())
        .is_some());
    assert_eq!(
        env.apply_derived(&schema, &["PQ".into()], &['P']),
        Err(KernelError::NameCollision('P'))
    );
    assert!(matches!(
        env.apply_derived(&schema, &["PZ".into()], &['S']),
        Err(KernelError::UnconstructedObject(_))
    ));
}

#[test]
fn empty_environment_has_empty_trace() {
    assert!(Environment::new().production_trace().is_empty());
}

/// Build a random chain by extensions and picks from segment AB, recording
/// an integer position for every point.
fn grow_chain(ops: &[(bool, bool, usize)]) -> (Environment, BTreeMap<char, i64>) {
    let mut env = with_segment("AB");
    let mut pos: BTreeMap<char, i64> = BTreeMap::from([('A', 0), ('B', 1 << 20)]);
    for (next, &(pick, front, at)) in (b'C'..).zip(ops) {
        let name = next as char;
        let pts = env.chains()[0].points.clone();
        if pick {
            let i = at % (pts.len() - 1);
            let (p, q) = (pts[i], pts[i + 1]);
            env.pick_on(&format!("{p}{q}"), name).unwrap();
            pos.insert(name, (pos[&p] + pos[&q]) / 2);
        } else if front {
            let (p, q) = (pts[0], pts[1]);
            env.apply_extend(&format!("{q}{p}"), p, name).unwrap();
            pos.insert(name, pos[&p] - (1 << 20));
        } else {
            let (p, q) = (pts[pts.len() - 1], pts[pts.len() - 2]);
            env.apply_extend(&format!("{q}{p}"), p, name).unwrap();
            pos.insert(name, pos[&p] + (1 << 20));
        }
    }
    (env, pos)
}

proptest::proptest! {
    #[test]
    fn chain_decompositions_match_integer_lengths(
        ops in proptest::collection::vec((proptest::bool::ANY, proptest::bool::ANY, 0usize..8), 0..4)
    ) {
        let (env, pos) = grow_chain(&ops);
        let len = |m: &Magnitude| {
            let (p, q) = m.name().endpoints().unwrap();
            (pos[&p] - pos[&q]).abs()
        };
        let pts = env.chains()[0].points.clone();
        // chain order agrees with the integer positions
        for w in pts.windows(2) {
            let (a, b) = (pos[&w[0]], pos[&w[1]]);
            proptest::prop_assert!(a != b);
            proptest::prop_assert_eq!(a < b, pos[&pts[0]] < pos[&pts[1]]);
        }
        for f in env.facts() {
            if let Judgment::Decomp { whole, parts } = &f.judgment {
                proptest::prop_assert_eq!(len(whole), len(&parts[0]) + len(&parts[1]));
            }
        }
        // every ordered triple is recorded
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                for k in j + 1..pts.len() {
                    let s = |a: char, b: char| seg(&format!("{a}{b}"));
                    let want = Judgment::sum(s(pts[i], pts[k]), s(pts[i], pts[j]), s(pts[j], pts[k])).unwrap();
                    proptest::prop_assert!(env.exact(&want).is_some());
                }
            }
        }
    }

    #[test]
    fn replay_is_deterministic(
        ops in proptest::collection::vec((proptest::bool::ANY, proptest::bool::ANY, 0usize..8), 0..4)
    ) {
        let (a, _) = grow_chain(&ops);
        let (b, _) = grow_chain(&ops);
        proptest::prop_assert_eq!(a, b);
    }
}

#[test]
fn construction_facts_only_mention_constructed_objects() {
    let (env, _) = grow_chain(&[(false, false, 0), (true, false, 1), (false, true, 0)]);
    for f in env.facts() {
        if let Provenance::ByConstruction { step } = f.provenance {
            assert!(env.step(step).kind.is_production());
            env.judgment_constructed(&f.judgment).unwrap();
            for p in f.judgment.points() {
                assert!(env.point_origin(p).unwrap().step() <= step);
            }
        }
    }
}

#[test]
fn trace_edges_agree_with_a_topological_sort() {
    use petgraph::algo::toposort;
    use petgraph::graph::DiGraph;

    let mut env = with_segment("AB");
    env.apply_circle(cl("c1"), 'A', "AB").unwrap();
    env.apply_circle(cl("c2"), 'B', "AB").unwrap();
    env.apply_meet(&cl("c1"), &cl("c2"), 'C').unwrap();
    env.apply_line('C', 'A').unwrap();
    env.apply_line('C', 'B').unwrap();
    env.apply_extend("CA", 'A', 'D').unwrap();
    let trace = env.production_trace();
    assert_eq!(trace.nodes.len(), 6);
    let mut g = DiGraph::<usize, ()>::new();
    let ids: Vec<_> = (0..trace.nodes.len()).map(|i| g.add_node(i)).collect();
    for &(a, b) in &trace.edges {
        assert!(a < b);
        g.add_edge(ids[a], ids[b], ());
    }
    let order = toposort(&g, None).expect("acyclic");
    let pos: Vec<usize> = {
        let mut p = vec![0; order.len()];
        for (i, n) in order.iter().enumerate() {
            p[g[*n]] = i;
        }
        p
    };
    for &(a, b) in &trace.edges {
        assert!(pos[a] < pos[b]);
    }
    // meet depends on both circles; the lines on the meet
    assert!(trace.edges.contains(&(0, 2)) && trace.edges.contains(&(1, 2)));
    assert!(trace.edges.contains(&(2, 3)) && trace.edges.contains(&(2, 4)));
}
