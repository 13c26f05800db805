//! Report tree shared by all subcommands: built once, emitted as JSON
//! (machine format) or LaTeX (human format).

use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Report {
    Text(String),
    /// mathematical content in the library's plain text format; wrapped
    /// in math mode for LaTeX
    Math(String),
    Int(i64),
    Bool(bool),
    List(Vec<Report>),
    Table {
        headers: Vec<String>,
        rows: Vec<Vec<Report>>,
    },
    Section {
        title: String,
        items: Vec<(String, Report)>,
    },
}

impl Report {
    pub fn section(title: &str, items: Vec<(&str, Report)>) -> Report {
        Report::Section {
            title: title.to_string(),
            items: items
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
        }
    }

    pub fn text(s: impl ToString) -> Report {
        Report::Text(s.to_string())
    }

    pub fn math(s: impl ToString) -> Report {
        Report::Math(s.to_string())
    }

    pub fn to_json(&self) -> Value {
        match self {
            Report::Text(s) => json!(s),
            Report::Math(s) => json!(s),
            Report::Int(n) => json!(n),
            Report::Bool(b) => json!(b),
            Report::List(items) => Value::Array(items.iter().map(Report::to_json).collect()),
            Report::Table { headers, rows } => json!({
                "headers": headers,
                "rows": rows
                    .iter()
                    .map(|r| Value::Array(r.iter().map(Report::to_json).collect()))
                    .collect::<Vec<Value>>(),
            }),
            Report::Section { title, items } => {
                let mut map = serde_json::Map::new();
                map.insert("title".into(), json!(title));
                for (k, v) in items {
                    map.insert(k.clone(), v.to_json());
                }
                Value::Object(map)
            }
        }
    }

    pub fn to_latex(&self) -> String {
        let mut out = String::new();
        self.latex_into(&mut out, 0);
        out
    }

    fn latex_into(&self, out: &mut String, depth: usize) {
        match self {
            Report::Text(s) => out.push_str(&escape_latex(s)),
            Report::Math(s) => {
                out.push('$');
                out.push_str(&math_latex(s));
                out.push('$');
            }
            Report::Int(n) => out.push_str(&n.to_string()),
            Report::Bool(b) => out.push_str(if *b { "\\textbf{true}" } else { "\\textbf{false}" }),
            Report::List(items) => {
                out.push_str("\\begin{itemize}\n");
                for it in items {
                    out.push_str("\\item ");
                    it.latex_into(out, depth + 1);
                    out.push('\n');
                }
                out.push_str("\\end{itemize}\n");
            }
            Report::Table { headers, rows } => {
                out.push_str(&format!(
                    "\\begin{{tabular}}{{{}}}\n",
                    "l".repeat(headers.len())
                ));
                out.push_str(
                    &headers
                        .iter()
                        .map(|h| escape_latex(h))
                        .collect::<Vec<_>>()
                        .join(" & "),
                );
                out.push_str(" \\\\\n\\hline\n");
                for row in rows {
                    let cells: Vec<String> = row
                        .iter()
                        .map(|c| {
                            let mut s = String::new();
                            c.latex_into(&mut s, depth + 1);
                            s
                        })
                        .collect();
                    out.push_str(&cells.join(" & "));
                    out.push_str(" \\\\\n");
                }
                out.push_str("\\end{tabular}\n");
            }
            Report::Section { title, items } => {
                let cmd = match depth {
                    0 => "section*",
                    1 => "subsection*",
                    _ => "paragraph",
                };
                out.push_str(&format!("\\{}{{{}}}\n", cmd, escape_latex(title)));
                for (k, v) in items {
                    match v {
                        Report::Section { .. } | Report::List(_) | Report::Table { .. } => {
                            out.push_str(&format!("\\textbf{{{}}}:\n", escape_latex(k)));
                            v.latex_into(out, depth + 1);
                        }
                        _ => {
                            out.push_str(&format!("\\textbf{{{}}}: ", escape_latex(k)));
                            v.latex_into(out, depth + 1);
                            out.push_str("\\par\n");
                        }
                    }
                }
            }
        }
    }
}

fn escape_latex(s: &str) -> String {
    let mut out = String::new();
    for ch in s.chars() {
        match ch {
            '&' | '%' | '$' | '#' | '_' | '{' | '}' => {
                out.push('\\');
                out.push(ch);
            }
            '~' => out.push_str("\\textasciitilde{}"),
            '^' => out.push_str("\\textasciicircum{}"),
            '\\' => out.push_str("\\textbackslash{}"),
            _ => out.push(ch),
        }
    }
    out
}

/// Turn the plain polynomial/number text format into LaTeX math: `*`
/// becomes invisible multiplication, `z(n)` the root of unity.
fn math_latex(s: &str) -> String {
    s.replace("z(", "\\zeta_{")
        .replace(')', "}")
        .replace('(', "{")
        .replace(" * ", "\\,")
        .replace('*', "\\,")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip_shape() {
        let r = Report::section(
            "demo",
            vec![
                ("order", Report::Int(24)),
                ("relation", Report::math("x^4 + y^3 + z^2")),
                ("ok", Report::Bool(true)),
            ],
        );
        let v = r.to_json();
        assert_eq!(v["title"], "demo");
        assert_eq!(v["order"], 24);
        assert_eq!(v["ok"], true);
    }

    #[test]
    fn latex_escapes() {
        let r = Report::text("a_b & c");
        assert_eq!(r.to_latex(), "a\\_b \\& c");
        let m = Report::math("1/2 * x^2");
        assert_eq!(m.to_latex(), "$1/2\\,x^2$");
    }
}
