//! Resolution of parsed blocks into validated categories, functors, classes,
//! cone classes and diagrams, and the printer that writes them back.

use std::fmt::Write as _;
use std::sync::Arc;

use multicat_core::error::CatError;
use multicat_core::fincat::{
    validate_category, validate_functor, Diagram, FinCategory, FinFunctor, RawCategory, RawFunctor,
};
use multicat_core::gamma::{ConeSpec, GammaClass};
use multicat_core::orthogonality::MorphismClass;
use thiserror::Error;

use crate::dsl::{is_bare_name, parse_blocks, Block, MapAst, Pos, Spanned, SyntaxError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WorkspaceError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("{pos}: invalid `{token}`: {source}")]
    Invalid {
        pos: Pos,
        token: String,
        #[source]
        source: CatError,
    },
    #[error("{pos}: `{token}`: {message}")]
    Reference {
        pos: Pos,
        token: String,
        message: String,
    },
}

impl WorkspaceError {
    pub fn pos(&self) -> Pos {
        match self {
            WorkspaceError::Syntax(e) => e.pos,
            WorkspaceError::Invalid { pos, .. } | WorkspaceError::Reference { pos, .. } => *pos,
        }
    }

    pub fn token(&self) -> &str {
        match self {
            WorkspaceError::Syntax(e) => &e.token,
            WorkspaceError::Invalid { token, .. } | WorkspaceError::Reference { token, .. } => {
                token
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedClass {
    pub name: String,
    pub category: Arc<FinCategory>,
    pub class: MorphismClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedGamma {
    pub name: String,
    pub category: Arc<FinCategory>,
    pub gamma: GammaClass,
}

/// Everything declared by one or more workspace files, in declaration order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Workspace {
    pub categories: Vec<Arc<FinCategory>>,
    pub functors: Vec<FinFunctor>,
    pub classes: Vec<NamedClass>,
    pub gammas: Vec<NamedGamma>,
    pub diagrams: Vec<Diagram>,
}

fn reference(s: &Spanned, message: impl Into<String>) -> WorkspaceError {
    WorkspaceError::Reference {
        pos: s.pos,
        token: s.name.clone(),
        message: message.into(),
    }
}

/// Blames the written name the error mentions, or `fallback`.
fn invalid<'a>(
    source: CatError,
    names: impl IntoIterator<Item = &'a Spanned>,
    fallback: &Spanned,
) -> WorkspaceError {
    let mentioned: Vec<String> = match &source {
        CatError::UnknownObject(n) | CatError::UnknownMorphism(n) | CatError::DuplicateName(n) => {
            vec![n.clone()]
        }
        CatError::DanglingRef { name, .. } => vec![name.clone()],
        CatError::MissingComposite { g, f }
        | CatError::NotComposable { g, f }
        | CatError::ConflictingComposite { g, f } => vec![g.clone(), f.clone()],
        CatError::LawViolation { witness, .. } | CatError::NotFunctorial { witness, .. } => {
            witness.clone()
        }
        _ => Vec::new(),
    };
    let names: Vec<&Spanned> = names.into_iter().collect();
    let duplicate = matches!(source, CatError::DuplicateName(_));
    let hit = mentioned.iter().find_map(|m| {
        let mut hits = names.iter().filter(|s| &s.name == m);
        if duplicate {
            hits.nth(1)
        } else {
            hits.next()
        }
    });
    let at = hit.copied().unwrap_or(fallback);
    WorkspaceError::Invalid {
        pos: at.pos,
        token: at.name.clone(),
        source,
    }
}

impl Workspace {
    pub fn parse(text: &str) -> Result<Workspace, WorkspaceError> {
        let mut w = Workspace::default();
        w.extend(text)?;
        Ok(w)
    }

    /// Adds the declarations of `text`; they may refer to anything already present.
    pub fn extend(&mut self, text: &str) -> Result<(), WorkspaceError> {
        for block in parse_blocks(text)? {
            self.add(block)?;
        }
        Ok(())
    }

    pub fn category(&self, name: &str) -> Option<&Arc<FinCategory>> {
        self.categories.iter().find(|c| c.name() == name)
    }

    pub fn functor(&self, name: &str) -> Option<&FinFunctor> {
        self.functors.iter().find(|f| f.name() == name)
    }

    pub fn class(&self, name: &str) -> Option<&NamedClass> {
        self.classes.iter().find(|c| c.name == name)
    }

    pub fn gamma(&self, name: &str) -> Option<&NamedGamma> {
        self.gammas.iter().find(|g| g.name == name)
    }

    pub fn diagram(&self, name: &str) -> Option<&Diagram> {
        self.diagrams.iter().find(|d| d.name == name)
    }

    fn lookup_category(&self, s: &Spanned) -> Result<Arc<FinCategory>, WorkspaceError> {
        self.category(&s.name)
            .cloned()
            .ok_or_else(|| reference(s, "no such category"))
    }

    fn add(&mut self, block: Block) -> Result<(), WorkspaceError> {
        match block {
            Block::Category(ast) => {
                if self.category(&ast.name.name).is_some() {
                    return Err(reference(&ast.name, "category already declared"));
                }
                let raw = RawCategory {
                    name: ast.name.name.clone(),
                    objects: ast.objects.iter().map(|s| s.name.clone()).collect(),
                    arrows: ast
                        .arrows
                        .iter()
                        .map(|(a, d, c)| (a.name.clone(), d.name.clone(), c.name.clone()))
                        .collect(),
                    compose: ast
                        .compose
                        .iter()
                        .map(|(g, f, h)| (g.name.clone(), f.name.clone(), h.name.clone()))
                        .collect(),
                };
                let names = ast
                    .objects
                    .iter()
                    .chain(ast.arrows.iter().flat_map(|(a, d, c)| [a, d, c]))
                    .chain(ast.compose.iter().flat_map(|(g, f, h)| [g, f, h]));
                let c = validate_category(&raw).map_err(|e| invalid(e, names, &ast.name))?;
                self.categories.push(Arc::new(c));
            }
            Block::Functor(ast) => {
                if self.functor(&ast.name.name).is_some() {
                    return Err(reference(&ast.name, "functor already declared"));
                }
                let f = self.resolve_map(&ast)?;
                self.functors.push(f);
            }
            Block::Diagram(ast) => {
                if self.diagram(&ast.name.name).is_some() {
                    return Err(reference(&ast.name, "diagram already declared"));
                }
                let f = self.resolve_map(&ast)?;
                self.diagrams.push(Diagram::new(&ast.name.name, f));
            }
            Block::Class(ast) => {
                if self.class(&ast.name.name).is_some() {
                    return Err(reference(&ast.name, "class already declared"));
                }
                let c = self.lookup_category(&ast.category)?;
                let mut members = Vec::new();
                for m in &ast.members {
                    members.push(c.morphism(&m.name).map_err(|e| invalid(e, [m], m))?);
                }
                self.classes.push(NamedClass {
                    name: ast.name.name.clone(),
                    class: MorphismClass::new(&c, members),
                    category: c,
                });
            }
            Block::Gamma(ast) => {
                if self.gamma(&ast.name.name).is_some() {
                    return Err(reference(&ast.name, "cone class already declared"));
                }
                let c = self.lookup_category(&ast.category)?;
                let mut cones = Vec::new();
                for (vertex, legs) in &ast.cones {
                    let v = c
                        .object(&vertex.name)
                        .map_err(|e| invalid(e, [vertex], vertex))?;
                    let mut ls = Vec::new();
                    for leg in legs {
                        let m = c.morphism(&leg.name).map_err(|e| invalid(e, [leg], leg))?;
                        if c.dom(m) != v {
                            return Err(reference(
                                leg,
                                format!("leg does not start at `{}`", vertex.name),
                            ));
                        }
                        ls.push(m);
                    }
                    cones.push(ConeSpec {
                        vertex: v,
                        legs: ls,
                    });
                }
                let gamma = GammaClass::new(&c, cones).map_err(|e| invalid(e, [], &ast.name))?;
                self.gammas.push(NamedGamma {
                    name: ast.name.name.clone(),
                    category: c,
                    gamma,
                });
            }
        }
        Ok(())
    }

    fn resolve_map(&self, ast: &MapAst) -> Result<FinFunctor, WorkspaceError> {
        let s = self.lookup_category(&ast.source)?;
        let t = self.lookup_category(&ast.target)?;
        let raw = RawFunctor {
            name: ast.name.name.clone(),
            obj: ast
                .obj
                .iter()
                .map(|(x, y)| (x.name.clone(), y.name.clone()))
                .collect(),
            mor: ast
                .mor
                .iter()
                .map(|(x, y)| (x.name.clone(), y.name.clone()))
                .collect(),
        };
        // unknown names are blamed on the side they were looked up in
        for (x, y) in &ast.obj {
            s.object(&x.name).map_err(|e| invalid(e, [x], x))?;
            t.object(&y.name).map_err(|e| invalid(e, [y], y))?;
        }
        for (x, y) in &ast.mor {
            s.morphism(&x.name).map_err(|e| invalid(e, [x], x))?;
            t.morphism(&y.name).map_err(|e| invalid(e, [y], y))?;
        }
        let names = ast.obj.iter().chain(&ast.mor).map(|(x, _)| x);
        validate_functor(&raw, &s, &t).map_err(|e| invalid(e, names, &ast.name))
    }

    /// The canonical text of the workspace; parsing it gives back an equal workspace.
    pub fn print(&self) -> String {
        let mut out = String::new();
        for c in &self.categories {
            print_category(&mut out, c);
        }
        for f in &self.functors {
            print_map(&mut out, "functor", f.name(), f);
        }
        for k in &self.classes {
            let members: Vec<String> = k
                .class
                .iter()
                .map(|m| quote(k.category.mor_name(m)))
                .collect();
            let _ = writeln!(
                out,
                "class {} in {} {{ {} }}\n",
                quote(&k.name),
                quote(k.category.name()),
                members.join(", ")
            );
        }
        for g in &self.gammas {
            let c = &g.category;
            let cones: Vec<String> = g
                .gamma
                .cones
                .iter()
                .map(|k| {
                    let legs: Vec<String> = k.legs.iter().map(|&m| quote(c.mor_name(m))).collect();
                    format!(
                        "  cone {} -> [{}]",
                        quote(c.obj_name(k.vertex)),
                        legs.join(", ")
                    )
                })
                .collect();
            let _ = writeln!(out, "gamma {} in {} {{", quote(&g.name), quote(c.name()));
            if !cones.is_empty() {
                let _ = writeln!(out, "{}", cones.join(";\n"));
            }
            let _ = writeln!(out, "}}\n");
        }
        for d in &self.diagrams {
            print_map(&mut out, "diagram", &d.name, &d.functor);
        }
        out.truncate(out.trim_end().len());
        out.push('\n');
        out
    }
}

/// A name as it must be written: bare when possible, quoted otherwise.
pub fn quote(name: &str) -> String {
    if is_bare_name(name) {
        name.to_string()
    } else {
        format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
    }
}

fn print_category(out: &mut String, c: &FinCategory) {
    let raw = c.to_raw();
    let objects: Vec<String> = raw.objects.iter().map(|o| quote(o)).collect();
    let _ = writeln!(out, "category {} {{", quote(&raw.name));
    let _ = writeln!(out, "  objects: {}", objects.join(", "));
    if !raw.arrows.is_empty() {
        let _ = writeln!(out, "  arrows:");
        for (a, d, c) in &raw.arrows {
            let _ = writeln!(out, "    {} : {} -> {}", quote(a), quote(d), quote(c));
        }
    }
    if !raw.compose.is_empty() {
        let _ = writeln!(out, "  compose:");
        for (g, f, h) in &raw.compose {
            let _ = writeln!(out, "    {} . {} = {}", quote(g), quote(f), quote(h));
        }
    }
    let _ = writeln!(out, "}}\n");
}

fn print_map(out: &mut String, keyword: &str, name: &str, f: &FinFunctor) {
    let raw = f.to_raw();
    let _ = writeln!(
        out,
        "{keyword} {} : {} -> {} {{",
        quote(name),
        quote(f.source().name()),
        quote(f.target().name())
    );
    if !raw.obj.is_empty() {
        let pairs: Vec<String> = raw
            .obj
            .iter()
            .map(|(x, y)| format!("{} => {}", quote(x), quote(y)))
            .collect();
        let _ = writeln!(out, "  obj: {}", pairs.join(", "));
    }
    if !raw.mor.is_empty() {
        let pairs: Vec<String> = raw
            .mor
            .iter()
            .map(|(x, y)| format!("{} => {}", quote(x), quote(y)))
            .collect();
        let _ = writeln!(out, "  mor: {}", pairs.join(", "));
    }
    let _ = writeln!(out, "}}\n");
}

#[cfg(test)]
mod tests {
    use super::*;

    const V: &str = "
        category V {
          objects: bot, a, b
          arrows:
            ia : bot -> a
            ib : bot -> b
        }
        category D2 { objects: a, b }
        functor U : D2 -> V { obj: a => a, b => b }
        class R in V { ia }
        gamma G in V { cone bot -> [ia, ib] }
        diagram P : D2 -> V { obj: a => a, b => b }
    ";

    #[test]
    fn resolves_and_round_trips() {
        let w = Workspace::parse(V).unwrap();
        assert_eq!(w.categories.len(), 2);
        assert_eq!(w.functor("U").unwrap().target().name(), "V");
        assert_eq!(w.class("R").unwrap().class.len(), 1);
        let again = Workspace::parse(&w.print()).unwrap();
        assert_eq!(w, again);
        assert_eq!(again.print(), w.print());
    }

    #[test]
    fn unknown_object_is_positioned() {
        let e = Workspace::parse("category A { objects: x }\nfunctor F : A -> A {\n obj: x => y }")
            .unwrap_err();
        assert_eq!(e.pos(), Pos { line: 3, col: 12 });
        assert_eq!(e.token(), "y");
    }

    #[test]
    fn duplicate_blames_second_occurrence() {
        let e = Workspace::parse("category A { objects: x, x }").unwrap_err();
        assert_eq!(e.pos(), Pos { line: 1, col: 26 });
    }

    #[test]
    fn odd_names_are_quoted() {
        let w = Workspace::parse("category \"A\\\\B c\" { objects: \"x y\" }").unwrap();
        assert_eq!(w.categories[0].name(), "A\\B c");
        assert_eq!(Workspace::parse(&w.print()).unwrap(), w);
    }
}
