//! Frozen example values and independent oracles.

use std::collections::{HashMap, VecDeque};

use negstat_core::qanalog::{double_pochhammer, pochhammer, q_binomial, q_factorial, q_int, Bound};
use negstat_core::*;

fn w(text: &str) -> SignedPermutation {
    text.parse().unwrap()
}

fn set(n: usize, text: &str) -> DescentSet {
    DescentSet::parse(n, text).unwrap()
}

fn poly(c: &[i64]) -> Series {
    Series::univariate(Var::Q, c, Caps::unbounded())
}

#[test]
fn example_statistics() {
    let beta = statistics(&w("[-3,1,-6,2,-4,-5]"));
    assert_eq!((beta.n1, beta.n2, beta.nmaj, beta.ndes), (4, 14, 29, 7));
    assert_eq!(
        (beta.inv, beta.maj, beta.len_b, beta.len_d),
        (9, 11, 27, 23)
    );
    assert_eq!(fmaj(&w("[-3,1,-6,2,-4,-5]")), 26);
    assert_eq!(fmaj(&w("[-1,2]")), 1);

    let gamma = statistics(&w("[-4,1,3,-5,-2,-6]"));
    assert_eq!(gamma.dmaj, 21);
    assert_eq!(gamma.ddes, 6);
    assert_eq!(gamma.epsilon, 0);
    assert_eq!(gamma.ddes_multiset, [1, 3, 3, 4, 5, 5]);

    let id = statistics(&SignedPermutation::identity(5));
    for k in StatKey::ALL {
        assert_eq!(k.of(&id), 0, "{k}");
    }
    assert!(id.des_b_set.is_empty() && id.des_d_set.is_empty());
}

#[test]
fn parsing_and_group_operations() {
    assert_eq!(w("[-3,1,-6,2,-4,-5]").rank(), 6);
    assert!("[1,1]".parse::<SignedPermutation>().is_err());
    assert!("[0,1]".parse::<SignedPermutation>().is_err());
    assert!("[]".parse::<SignedPermutation>().is_err());
    assert_eq!(w("[2,-1]").inverse(), w("[-2,1]"));
    assert_eq!(w("[-2,-1]").inverse(), w("[-2,-1]"));
    assert!(w("[-1,-2]").is_even_signed());
    assert!(w("[-3,1,-6,2,-4,-5]").is_even_signed());
    assert!(!w("[-1,2]").is_even_signed());
}

#[test]
fn q_analog_examples() {
    assert!(q_int(0).is_zero());
    assert_eq!(q_factorial(0), poly(&[1]));
    assert_eq!(q_factorial(3), poly(&[1, 2, 2, 1]));
    assert_eq!(q_binomial(4, 2), poly(&[1, 1, 2, 1, 1]));
    assert_eq!(
        q_binomial(4, 2),
        q_factorial(4)
            .div_exact(&(q_factorial(2) * q_factorial(2)), Var::Q)
            .unwrap()
    );

    let caps = Caps::unbounded();
    let qv = Monomial::var(Var::Q);
    assert_eq!(pochhammer(Term::new(1, qv), qv, 0, caps), Series::one(caps));
    assert_eq!(
        pochhammer(Term::new(1, qv), qv, 2, caps),
        poly(&[1, -1]) * poly(&[1, 0, -1])
    );
    let u = Term::new(1, Monomial::var(Var::U));
    assert_eq!(
        double_pochhammer(u, Bound::Finite(0), Bound::Infinite, caps.with(Var::Q, 3)).unwrap(),
        Series::one(caps.with(Var::Q, 3))
    );

    let caps = Caps::unbounded().with(Var::T, 12).with(Var::Q, 12);
    let f = pochhammer(Term::new(1, Monomial::var(Var::T)), qv, 3, caps);
    assert_eq!(&f.invert().unwrap() * &f, Series::one(caps));
    let g = (Series::one(caps.with(Var::Q, 6))
        - Series::monomial(1.into(), qv, caps.with(Var::Q, 6)))
    .invert()
    .unwrap();
    assert_eq!(g, Series::univariate(Var::Q, &[1; 7], caps.with(Var::Q, 6)));
}

#[test]
fn enumeration_examples() {
    assert_eq!(iter_group(Group::B, 2).count(), 8);
    let d2: Vec<_> = iter_group(Group::D, 2).collect();
    assert_eq!(d2, [w("[-2,-1]"), w("[-1,-2]"), w("[1,2]"), w("[2,1]")]);
    let bj: Vec<_> = quotient_increasing(Group::B, 2).unwrap().collect();
    assert_eq!(bj, [w("[-2,-1]"), w("[-2,1]"), w("[-1,2]"), w("[1,2]")]);

    let (u, sigma) = factor_quotient(&w("[-3,1,-6,2,-4,-5]"), Group::B).unwrap();
    assert_eq!(u, w("[-6,-5,-4,-3,1,2]"));
    assert_eq!(u.compose(&sigma).unwrap(), w("[-3,1,-6,2,-4,-5]"));

    let class = |g, n, s: &str| {
        descent_class_filter(&DescentClassSpec::new(g, set(n, s), Mode::Subset).unwrap())
    };
    assert_eq!(
        class(Group::B, 2, "0"),
        [w("[-2,-1]"), w("[-1,2]"), w("[1,2]"), w("[2,-1]")]
    );
    assert_eq!(class(Group::D, 2, ""), [w("[1,2]")]);
    assert_eq!(class(Group::D, 2, "0"), [w("[-2,-1]"), w("[1,2]")]);
    assert_eq!(class(Group::A, 3, "1,2").len(), 6);
    assert!(DescentClassSpec::new(Group::A, set(3, "0"), Mode::Subset).is_err());

    let b0: Vec<String> = descent_class_blocks_b(&set(2, "0"))
        .iter()
        .map(|(_, b)| b.to_string())
        .collect();
    assert_eq!(b0, ["(1,2)", "(-1) (2)", "(-2,-1)"]);
    let one = ShuffleBlock::new(vec![vec![-1], vec![2]], Parity::None).unwrap();
    assert_eq!(
        expand_shuffles(&one).collect::<Vec<_>>(),
        [w("[-1,2]"), w("[2,-1]")]
    );
}

#[test]
fn b2_type_d_tabulation() {
    let table: Vec<(String, Vec<SignedPermutation>)> = des_d_tabulation(2)
        .into_iter()
        .map(|(s, v)| (s.to_string(), v))
        .collect();
    let want = [
        ("{}", vec![w("[-1,2]"), w("[1,2]")]),
        ("{0}", vec![w("[-2,-1]"), w("[2,-1]")]),
        ("{1}", vec![w("[-2,1]"), w("[2,1]")]),
        ("{0,1}", vec![w("[-1,-2]"), w("[1,-2]")]),
    ];
    assert_eq!(table.len(), want.len());
    for ((s, v), (ws, wv)) in table.iter().zip(want) {
        assert_eq!((s.as_str(), v.as_slice()), (ws, wv.as_slice()));
    }
}

fn columns(blocks: &[ShuffleBlock]) -> Vec<Vec<Vec<i32>>> {
    blocks.iter().map(|b| b.sequences().to_vec()).collect()
}

#[test]
fn n4_m13_block_tables() {
    let m = set(4, "1,3");
    let d: Vec<ShuffleBlock> = descent_class_blocks_d(&m)
        .into_iter()
        .map(|(_, _, b)| b)
        .collect();
    assert_eq!(
        columns(&d),
        [
            vec![vec![1], vec![2, 3], vec![4]],
            vec![vec![-1, 2, 3], vec![-4]],
            vec![vec![-2, 1], vec![3], vec![-4]],
            vec![vec![-3, -2, 1], vec![4]],
        ]
    );
    assert_eq!(
        columns(&chain_blocks(&m, 1).unwrap()),
        [
            vec![vec![1], vec![2, 3], vec![4]],
            vec![vec![1, 2, 3], vec![-4]],
            vec![vec![-2, 1], vec![3], vec![-4]],
            vec![vec![-3, -2, 1], vec![4]],
        ]
    );
    assert_eq!(
        columns(&chain_blocks(&m, 3).unwrap()),
        [
            vec![vec![-2], vec![3, 1], vec![4]],
            vec![vec![2, 3, 1], vec![-4]],
            vec![vec![-3, -2], vec![1], vec![-4]],
            vec![vec![1, -3, -2], vec![4]],
        ]
    );
}

#[test]
fn closed_form_examples() {
    assert_eq!(closed_form_a(&set(3, "1")).unwrap(), poly(&[1, 1, 1]));
    assert_eq!(
        closed_form_b(&set(2, "0")),
        poly(&[1, 1]) * poly(&[1, 0, 1])
    );
    assert_eq!(
        closed_form_b(&set(3, "0,1,2")),
        poincare_oracle(Group::B, 3)
    );
    assert_eq!(closed_form_b_dlen(&set(2, "0")), poly(&[2, 2]));
    assert_eq!(closed_form_d(&set(2, "0")).unwrap(), poly(&[1, 1]));
    assert_eq!(closed_form_d(&set(5, "")).unwrap(), poly(&[1]));
    assert_eq!(poincare_oracle(Group::D, 2), poly(&[1, 2, 1]));
}

/// Word length over the simple reflections, by breadth-first search from the identity.
fn coxeter_lengths(group: Group, n: usize) -> HashMap<SignedPermutation, u32> {
    let generators = |p: &SignedPermutation| {
        let mut out = Vec::new();
        for i in 1..n {
            let mut v = p.window().to_vec();
            v.swap(i - 1, i);
            out.push(v);
        }
        let mut v = p.window().to_vec();
        match group {
            Group::B => v[0] = -v[0],
            Group::D if n >= 2 => {
                v.swap(0, 1);
                v[0] = -v[0];
                v[1] = -v[1];
            }
            _ => return out,
        }
        out.push(v);
        out
    };
    let start = SignedPermutation::identity(n);
    let mut dist = HashMap::from([(start.clone(), 0)]);
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        let d = dist[&p];
        for v in generators(&p) {
            let q = SignedPermutation::new(v).unwrap();
            dist.entry(q.clone()).or_insert_with(|| {
                queue.push_back(q);
                d + 1
            });
        }
    }
    dist
}

#[test]
fn lengths_match_word_length() {
    for n in 1..=5 {
        let b = coxeter_lengths(Group::B, n);
        assert_eq!(b.len() as u64, Group::B.order(n));
        for (p, &l) in &b {
            assert_eq!(statistics(p).len_b, l, "{p}");
        }
        let d = coxeter_lengths(Group::D, n);
        assert_eq!(d.len() as u64, Group::D.order(n));
        for (p, &l) in &d {
            assert_eq!(statistics(p).len_d, l, "{p}");
        }
        let a = coxeter_lengths(Group::A, n);
        for (p, &l) in &a {
            assert_eq!(statistics(p).inv, l, "{p}");
        }
    }
}

#[test]
fn verify_examples() {
    let o = verify(
        IdentityId::ClassB,
        &VerifyParams::single(2).with_set(vec![0]),
    )
    .unwrap();
    assert_eq!(o.status, Status::Pass);
    assert_eq!(o.lhs, poly(&[1, 1]) * poly(&[1, 0, 1]));
    assert_eq!(
        verify(IdentityId::Fs2A, &VerifyParams::single(5))
            .unwrap()
            .status,
        Status::Pass
    );
    let o = verify(IdentityId::RoselleB, &VerifyParams::default()).unwrap();
    assert_eq!(o.status, Status::Pass);
    assert_eq!(o.lhs.constant_term(), 1.into());
    assert!("nope".parse::<IdentityId>().is_err());
}
