use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use multicat::dsl::{Pos, SyntaxError};
use multicat::workspace::{NamedClass, NamedGamma, Workspace};
use multicat_core::enumerate::enumerate_categories;
use multicat_core::fincat::{validate_category, Diagram, RawCategory};
use multicat_core::gamma::{ConeSpec, GammaClass};
use multicat_core::orthogonality::MorphismClass;
use multicat_core::{FinCategory, FinFunctor, Mor};
use proptest::prelude::*;
use proptest::sample::Index;

fn shapes() -> &'static [Arc<FinCategory>] {
    static SHAPES: OnceLock<Vec<Arc<FinCategory>>> = OnceLock::new();
    SHAPES.get_or_init(|| enumerate_categories(3, 4))
}

/// Names that stress quoting: keywords, punctuation, comment markers, escapes, newlines.
fn name() -> impl Strategy<Value = String> {
    prop_oneof![
        "[a-z][a-z0-9_']{0,4}",
        Just("category".to_string()),
        Just("objects".to_string()),
        Just("compose".to_string()),
        Just("cone".to_string()),
        "[ -~]{1,6}",
        "[a-z]{0,2}[\"\\\\/{}:;.\\[\\]-]{1,3}[a-z]{0,2}",
        "[αβγ∘⊥ℒ\n\t ]{1,3}",
    ]
}

fn names(n: usize) -> impl Strategy<Value = Vec<String>> {
    proptest::collection::vec(name(), n)
}

fn rename(c: &FinCategory, cat: &str, objs: &[String], arrows: &[String]) -> Option<FinCategory> {
    let raw = c.to_raw();
    let mut map: HashMap<String, String> = HashMap::new();
    for (old, new) in raw.objects.iter().zip(objs) {
        map.insert(old.clone(), new.clone());
        map.insert(format!("id_{old}"), format!("id_{new}"));
    }
    for ((old, _, _), new) in raw.arrows.iter().zip(arrows) {
        map.insert(old.clone(), new.clone());
    }
    let m = |s: &String| map[s].clone();
    let renamed = RawCategory {
        name: cat.to_string(),
        objects: raw.objects.iter().map(m).collect(),
        arrows: raw
            .arrows
            .iter()
            .map(|(a, d, t)| (m(a), m(d), m(t)))
            .collect(),
        compose: raw
            .compose
            .iter()
            .map(|(g, f, h)| (m(g), m(f), m(h)))
            .collect(),
    };
    validate_category(&renamed).ok()
}

fn workspace() -> impl Strategy<Value = Workspace> {
    (
        any::<Index>(),
        names(8),
        proptest::collection::vec(any::<bool>(), 16),
        any::<Index>(),
    )
        .prop_filter_map("names collide", |(i, ns, mask, j)| {
            let shape = &shapes()[i.index(shapes().len())];
            let (no, na) = (
                shape.object_count(),
                shape.morphism_count() - shape.object_count(),
            );
            if ns.len() < 2 + no + na {
                return None;
            }
            let c = Arc::new(rename(shape, &ns[0], &ns[2..2 + no], &ns[2 + no..])?);
            let n = c.morphism_count();
            let class = MorphismClass::from_mask(mask[..n].to_vec());
            let cones = match c.objects().nth(j.index(no.max(1))) {
                Some(vertex) => {
                    let legs: Vec<Mor> = c.out_of(vertex).filter(|m| class.contains(*m)).collect();
                    vec![ConeSpec { vertex, legs }]
                }
                None => Vec::new(),
            };
            let gamma = GammaClass::new(&c, cones).ok()?;
            let id = FinFunctor::identity(&c).with_name(&ns[1]);
            Some(Workspace {
                categories: vec![c.clone()],
                functors: vec![id.clone()],
                classes: vec![NamedClass {
                    name: ns[1].clone(),
                    category: c.clone(),
                    class,
                }],
                gammas: vec![NamedGamma {
                    name: ns[0].clone(),
                    category: c.clone(),
                    gamma,
                }],
                diagrams: vec![Diagram::new(&ns[0], id.with_name(&ns[0]))],
            })
        })
}

/// The character at a 1-based position, if any.
fn char_at(text: &str, pos: Pos) -> Option<char> {
    text.split('\n').nth(pos.line - 1)?.chars().nth(pos.col - 1)
}

fn token_pieces() -> impl Strategy<Value = String> {
    prop_oneof![
        Just("category".to_string()),
        Just("functor".to_string()),
        Just("class".to_string()),
        Just("gamma".to_string()),
        Just("diagram".to_string()),
        Just("objects:".to_string()),
        Just("arrows:".to_string()),
        Just("compose:".to_string()),
        Just("obj:".to_string()),
        Just("mor:".to_string()),
        Just("cone".to_string()),
        Just("in".to_string()),
        "[{}\\[\\],;:.=]",
        Just("->".to_string()),
        Just("=>".to_string()),
        Just("\"".to_string()),
        Just("//".to_string()),
        Just("\n".to_string()),
        "[a-c]{1,2}",
        "[ -~]",
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn print_then_parse_is_identity(w in workspace()) {
        let text = w.print();
        let back = Workspace::parse(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(&back, &w);
        prop_assert_eq!(back.print(), text);
    }

    #[test]
    fn garbage_never_panics(pieces in proptest::collection::vec(token_pieces(), 0..40)) {
        let text = pieces.join(" ");
        match Workspace::parse(&text) {
            Ok(w) => {
                let again = Workspace::parse(&w.print()).unwrap();
                prop_assert_eq!(again, w);
            }
            Err(e) => {
                let pos = e.pos();
                prop_assert!(pos.line >= 1 && pos.col >= 1);
                if e.token() != "end of input" {
                    let first = e.token().chars().next();
                    let at = char_at(&text, pos);
                    prop_assert!(first.is_none() || at == first || at == Some('"'), "{e} at {at:?} in {text:?}");
                }
            }
        }
    }

    #[test]
    fn arbitrary_text_never_panics(text in "\\PC{0,200}") {
        if let Err(e) = Workspace::parse(&text) {
            prop_assert!(e.pos().line >= 1);
        }
    }
}

#[test]
fn syntax_errors_display_their_position() {
    let e = Workspace::parse("category C {\n  objects: a,\n}").unwrap_err();
    let s: &SyntaxError = match &e {
        multicat::workspace::WorkspaceError::Syntax(s) => s,
        other => panic!("{other}"),
    };
    assert_eq!((s.pos.line, s.pos.col), (3, 1));
    assert!(e.to_string().starts_with("3:1"));
}
