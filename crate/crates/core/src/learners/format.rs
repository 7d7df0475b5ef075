//! Line-oriented text format for trained models.
//!
//! ```text
//! simplicity-model v1
//! features <n>
//! tree majority | stump | depth2
//! ...body...
//! end
//! ```
//!
//! Bodies, one item per line (leading whitespace is ignored):
//!
//! * majority: `class <c>` then `counts <n0> <n1> ...`
//! * stump: a `split` line followed by one `branch <c>` line per branch
//! * depth2: a `split` line followed by one `child` entry per root branch,
//!   either `child leaf <c>` or `child stump` + split + branches + `end`
//!
//! A split line is `split <feature> nominal <arity>` or
//! `split <feature> intervals <t1> <t2> ...`. Thresholds are written in
//! shortest round-trip decimal form.

use std::fmt::Write as _;

use crate::error::{Error, Result};

use super::{Child, Depth2Model, MajorityModel, Model, SplitForm, SplitRule, StumpModel};

pub const FORMAT_HEADER: &str = "simplicity-model v1";

pub fn write_model(model: &Model) -> String {
    let mut out = String::new();
    writeln!(out, "{FORMAT_HEADER}").unwrap();
    match model {
        Model::Majority(m) => {
            writeln!(out, "features {}", m.n_features).unwrap();
            writeln!(out, "tree majority").unwrap();
            writeln!(out, "class {}", m.predicted_class).unwrap();
            let counts: Vec<String> = m.class_counts.iter().map(u32::to_string).collect();
            writeln!(out, "counts {}", counts.join(" ")).unwrap();
        }
        Model::Stump(m) => {
            writeln!(out, "features {}", m.n_features).unwrap();
            writeln!(out, "tree stump").unwrap();
            write_stump(&mut out, m, "");
        }
        Model::Depth2(m) => {
            writeln!(out, "features {}", m.n_features).unwrap();
            writeln!(out, "tree depth2").unwrap();
            write_split(&mut out, &m.root, "");
            for child in &m.children {
                match child {
                    Child::Leaf(c) => writeln!(out, "child leaf {c}").unwrap(),
                    Child::Stump(s) => {
                        writeln!(out, "child stump").unwrap();
                        write_stump(&mut out, s, "  ");
                        writeln!(out, "  end").unwrap();
                    }
                }
            }
        }
    }
    writeln!(out, "end").unwrap();
    out
}

fn write_split(out: &mut String, split: &SplitRule, indent: &str) {
    match &split.form {
        SplitForm::Nominal { arity } => {
            writeln!(out, "{indent}split {} nominal {arity}", split.feature).unwrap()
        }
        SplitForm::Intervals { thresholds } => {
            write!(out, "{indent}split {} intervals", split.feature).unwrap();
            for t in thresholds {
                write!(out, " {t:?}").unwrap();
            }
            out.push('\n');
        }
    }
}

fn write_stump(out: &mut String, stump: &StumpModel, indent: &str) {
    write_split(out, &stump.split, indent);
    for c in &stump.branch_classes {
        writeln!(out, "{indent}branch {c}").unwrap();
    }
}

struct Lines<'a> {
    lines: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split_whitespace().collect::<Vec<_>>()))
            .filter(|(_, t)| !t.is_empty())
            .collect();
        Lines { lines, pos: 0 }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        let line = self
            .lines
            .get(self.pos.saturating_sub(1))
            .map_or(0, |l| l.0);
        Error::parse(format!("model line {line}"), message)
    }

    fn next(&mut self) -> Result<&[&'a str]> {
        let idx = self.pos;
        self.pos += 1;
        match self.lines.get(idx) {
            Some((_, tokens)) => Ok(tokens),
            None => Err(Error::parse("model", "unexpected end of input")),
        }
    }

    fn peek(&self) -> Option<&[&'a str]> {
        self.lines.get(self.pos).map(|(_, t)| t.as_slice())
    }

    fn keyword(&mut self, keyword: &str) -> Result<Vec<&'a str>> {
        let tokens = self.next()?.to_vec();
        if tokens[0] != keyword {
            return Err(self.err(format!("expected '{keyword}', found '{}'", tokens[0])));
        }
        Ok(tokens[1..].to_vec())
    }

    fn number<T: std::str::FromStr>(&self, token: Option<&&str>) -> Result<T> {
        token
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| self.err("expected a number"))
    }
}

fn read_split(lines: &mut Lines<'_>, n_features: usize) -> Result<SplitRule> {
    let args = lines.keyword("split")?;
    let feature: usize = lines.number(args.first())?;
    if feature >= n_features {
        return Err(lines.err(format!("feature {feature} out of range")));
    }
    match args.get(1).copied() {
        Some("nominal") => Ok(SplitRule::nominal(feature, lines.number(args.get(2))?)),
        Some("intervals") => {
            let thresholds = args[2..]
                .iter()
                .map(|t| lines.number::<f64>(Some(t)))
                .collect::<Result<Vec<_>>>()?;
            if !thresholds.windows(2).all(|w| w[0] < w[1]) || thresholds.iter().any(|t| !t.is_finite()) {
                return Err(lines.err("thresholds must be finite and strictly increasing"));
            }
            Ok(SplitRule::intervals(feature, thresholds))
        }
        _ => Err(lines.err("expected 'nominal' or 'intervals'")),
    }
}

fn read_stump(lines: &mut Lines<'_>, n_features: usize) -> Result<StumpModel> {
    let split = read_split(lines, n_features)?;
    let mut branch_classes = Vec::with_capacity(split.branch_count());
    for _ in 0..split.branch_count() {
        let args = lines.keyword("branch")?;
        branch_classes.push(lines.number(args.first())?);
    }
    Ok(StumpModel {
        split,
        branch_classes,
        n_features,
    })
}

pub fn read_model(text: &str) -> Result<Model> {
    let mut lines = Lines::new(text);
    let header = lines.next()?.join(" ");
    if header != FORMAT_HEADER {
        return Err(Error::parse("model", format!("unsupported header '{header}'")));
    }
    let args = lines.keyword("features")?;
    let n_features: usize = lines.number(args.first())?;
    let kind = lines.keyword("tree")?;
    let model = match kind.first().copied() {
        Some("majority") => {
            let class_args = lines.keyword("class")?;
            let predicted_class: usize = lines.number(class_args.first())?;
            let class_counts = lines
                .keyword("counts")?
                .iter()
                .map(|t| lines.number::<u32>(Some(t)))
                .collect::<Result<Vec<_>>>()?;
            if predicted_class >= class_counts.len() {
                return Err(lines.err("class index beyond the counts list"));
            }
            Model::Majority(MajorityModel {
                predicted_class,
                class_counts,
                n_features,
            })
        }
        Some("stump") => Model::Stump(read_stump(&mut lines, n_features)?),
        Some("depth2") => {
            let root = read_split(&mut lines, n_features)?;
            let mut children = Vec::with_capacity(root.branch_count());
            for _ in 0..root.branch_count() {
                let args = lines.keyword("child")?;
                match args.first().copied() {
                    Some("leaf") => children.push(Child::Leaf(lines.number(args.get(1))?)),
                    Some("stump") => {
                        let stump = read_stump(&mut lines, n_features)?;
                        lines.keyword("end")?;
                        children.push(Child::Stump(stump));
                    }
                    _ => return Err(lines.err("expected 'leaf' or 'stump'")),
                }
            }
            Model::Depth2(Depth2Model {
                root,
                children,
                n_features,
            })
        }
        _ => return Err(lines.err("unknown tree kind")),
    };
    lines.keyword("end")?;
    if lines.peek().is_some() {
        return Err(lines.err("trailing content after 'end'"));
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{parse_dataset, ParseOptions};
    use crate::learners::{train, Depth, LearnerParams};

    #[test]
    fn round_trips_trained_models() {
        let d = parse_dataset(
            "a,b,c,class\n1.5,x,0.1,p\n2.25,y,0.2,q\n3,x,?,q\n?,z,0.4,p\n5,y,0.5,q\n6,x,0.7,p\n",
            &ParseOptions::default(),
        )
        .unwrap();
        let params = LearnerParams { min_bucket: 1 };
        for depth in Depth::ALL {
            let model = train(depth, &d.all(), &params).unwrap();
            let text = write_model(&model);
            assert_eq!(read_model(&text).unwrap(), model, "{text}");
        }
    }

    #[test]
    fn reads_hand_written_tree() {
        let text = "simplicity-model v1\nfeatures 2\ntree depth2\nsplit 0 intervals 2.5\n\
                    child leaf 0\nchild stump\n  split 1 nominal 1\n  branch 1\n  branch 0\n  end\nchild leaf 1\nend\n";
        match read_model(text).unwrap() {
            Model::Depth2(m) => {
                assert_eq!(m.root.thresholds(), &[2.5]);
                assert!(matches!(m.children[1], Child::Stump(_)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(read_model("").is_err());
        assert!(read_model("simplicity-model v2\n").is_err());
        let base = "simplicity-model v1\nfeatures 1\ntree stump\n";
        assert!(read_model(&format!("{base}split 3 nominal 2\n")).is_err());
        assert!(read_model(&format!("{base}split 0 intervals 2 1\nbranch 0\nbranch 0\nbranch 0\nend\n")).is_err());
        assert!(read_model(&format!("{base}split 0 nominal 1\nbranch 0\nend\n")).is_err());
        assert!(read_model(&format!("{base}split 0 nominal 1\nbranch 0\nbranch 1\nend\nextra\n")).is_err());
    }
}
