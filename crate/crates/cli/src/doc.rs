//! The line-oriented input format: parsing and canonical rendering.
//!
//! A document is a sequence of declarations, one per line. Blank lines and
//! lines starting with `#` are skipped. Each declaration has a unique name;
//! references point at earlier declarations (checked during resolution, not
//! here). The parser keeps element literals as strings so that a parsed
//! document can be rendered back to text and re-parsed to an equal value.
//!
//! Declaration forms:
//!
//! ```text
//! group NAME cyclic order=N
//! group NAME perm degree=D gens="(1 2);(1 2 3)"
//! group NAME table rows="0 1;1 0"
//! product NAME = G1 x G2 x ...
//! subgroup NAME in PROD gens="[a,b];[c,d]"
//! hom NAME : DOM -> COD map="a:b, c:d"
//! present NAME = [SRC; f1, f2]
//! goursat NAME in PROD : i="..." k="..." j="..." l="..." sigma="a:b"
//! pullback NAME = (t1, t2)
//! ```
//!
//! Element literals may not contain commas, semicolons, colons or quotes at
//! nesting depth zero; canonical element names (decimal indices, cycle
//! strings, bracketed tuples) never do.

use std::collections::HashSet;
use std::fmt;

use subdirect::Error;

type Result<T> = std::result::Result<T, Error>;

/// A parsed input document: declarations in file order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    decls: Vec<Decl>,
}

/// One declaration. Element and permutation literals are kept verbatim
/// (trimmed); resolution to table ids happens in [`crate::resolve`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decl {
    Group {
        name: String,
        kind: GroupKind,
    },
    Product {
        name: String,
        factors: Vec<String>,
    },
    Subgroup {
        name: String,
        product: String,
        gens: Vec<Vec<String>>,
    },
    Hom {
        name: String,
        domain: String,
        codomain: String,
        pairs: Vec<(String, String)>,
    },
    Present {
        name: String,
        source: String,
        maps: Vec<String>,
    },
    Goursat {
        name: String,
        product: String,
        i: Vec<String>,
        k: Vec<String>,
        j: Vec<String>,
        l: Vec<String>,
        sigma: Vec<(String, String)>,
    },
    Pullback {
        name: String,
        maps: Vec<String>,
    },
}

/// How a named group is built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupKind {
    Cyclic { order: usize },
    Perm { degree: usize, gens: Vec<String> },
    Table { rows: Vec<Vec<u16>> },
}

impl Decl {
    pub fn name(&self) -> &str {
        match self {
            Decl::Group { name, .. }
            | Decl::Product { name, .. }
            | Decl::Subgroup { name, .. }
            | Decl::Hom { name, .. }
            | Decl::Present { name, .. }
            | Decl::Goursat { name, .. }
            | Decl::Pullback { name, .. } => name,
        }
    }

    /// The declaration keyword, used in error messages.
    pub fn kind_word(&self) -> &'static str {
        match self {
            Decl::Group { .. } => "group",
            Decl::Product { .. } => "product",
            Decl::Subgroup { .. } => "subgroup",
            Decl::Hom { .. } => "hom",
            Decl::Present { .. } => "present",
            Decl::Goursat { .. } => "goursat",
            Decl::Pullback { .. } => "pullback",
        }
    }
}

impl fmt::Display for Decl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decl::Group { name, kind } => match kind {
                GroupKind::Cyclic { order } => write!(f, "group {name} cyclic order={order}"),
                GroupKind::Perm { degree, gens } => {
                    write!(
                        f,
                        "group {name} perm degree={degree} gens=\"{}\"",
                        gens.join("; ")
                    )
                }
                GroupKind::Table { rows } => {
                    let body = rows
                        .iter()
                        .map(|r| r.iter().map(u16::to_string).collect::<Vec<_>>().join(" "))
                        .collect::<Vec<_>>()
                        .join(";");
                    write!(f, "group {name} table rows=\"{body}\"")
                }
            },
            Decl::Product { name, factors } => {
                write!(f, "product {name} = {}", factors.join(" x "))
            }
            Decl::Subgroup {
                name,
                product,
                gens,
            } => {
                let body = gens
                    .iter()
                    .map(|t| format!("[{}]", t.join(",")))
                    .collect::<Vec<_>>()
                    .join(";");
                write!(f, "subgroup {name} in {product} gens=\"{body}\"")
            }
            Decl::Hom {
                name,
                domain,
                codomain,
                pairs,
            } => {
                let body = pairs
                    .iter()
                    .map(|(a, b)| format!("{a}:{b}"))
                    .collect::<Vec<_>>()
                    .join(", ");
                write!(f, "hom {name} : {domain} -> {codomain} map=\"{body}\"")
            }
            Decl::Present { name, source, maps } => {
                write!(f, "present {name} = [{source}; {}]", maps.join(", "))
            }
            Decl::Goursat {
                name,
                product,
                i,
                k,
                j,
                l,
                sigma,
            } => {
                let list = |xs: &[String]| xs.join(",");
                let body = sigma
                    .iter()
                    .map(|(a, b)| format!("{a}:{b}"))
                    .collect::<Vec<_>>()
                    .join(", ");
                write!(
                    f,
                    "goursat {name} in {product} : i=\"{}\" k=\"{}\" j=\"{}\" l=\"{}\" sigma=\"{body}\"",
                    list(i),
                    list(k),
                    list(j),
                    list(l)
                )
            }
            Decl::Pullback { name, maps } => {
                write!(f, "pullback {name} = ({})", maps.join(", "))
            }
        }
    }
}

impl Document {
    pub fn decls(&self) -> &[Decl] {
        &self.decls
    }

    pub fn decl(&self, name: &str) -> Option<&Decl> {
        self.decls.iter().find(|d| d.name() == name)
    }

    /// Canonical text form. `parse(doc.render())` equals `doc`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for d in &self.decls {
            out.push_str(&d.to_string());
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Document> {
        let mut decls = Vec::new();
        let mut names: HashSet<String> = HashSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let decl = parse_line(line_no, line)?;
            if !names.insert(decl.name().to_string()) {
                return Err(Error::Input(format!(
                    "line {line_no}: duplicate name {}",
                    decl.name()
                )));
            }
            decls.push(decl);
        }
        Ok(Document { decls })
    }
}

fn parse_line(line_no: usize, line: &str) -> Result<Decl> {
    let mut c = Cursor {
        line_no,
        text: line,
        pos: 0,
    };
    let keyword = c.word("a declaration keyword")?.to_string();
    let decl = match keyword.as_str() {
        "group" => parse_group(&mut c)?,
        "product" => parse_product(&mut c)?,
        "subgroup" => parse_subgroup(&mut c)?,
        "hom" => parse_hom(&mut c)?,
        "present" => parse_present(&mut c)?,
        "goursat" => parse_goursat(&mut c)?,
        "pullback" => parse_pullback(&mut c)?,
        other => {
            return Err(c.error(&format!(
                "unknown declaration keyword {other} (expected group, product, subgroup, hom, present, goursat or pullback)"
            )))
        }
    };
    c.end()?;
    Ok(decl)
}

fn parse_group(c: &mut Cursor) -> Result<Decl> {
    let name = c.word("a group name")?.to_string();
    let kind_word = c.word("a group kind (cyclic, perm or table)")?;
    let kind = match kind_word {
        "cyclic" => GroupKind::Cyclic {
            order: c.attr_num("order")?,
        },
        "perm" => {
            let degree = c.attr_num("degree")?;
            let gens = split_top(c.attr_str("gens")?, ';')
                .into_iter()
                .map(str::to_string)
                .collect();
            GroupKind::Perm { degree, gens }
        }
        "table" => {
            let mut rows = Vec::new();
            for row in split_top(c.attr_str("rows")?, ';') {
                let mut entries = Vec::new();
                for tok in row.split_whitespace() {
                    let v: u16 = tok
                        .parse()
                        .map_err(|_| c.error(&format!("bad table entry {tok}")))?;
                    entries.push(v);
                }
                rows.push(entries);
            }
            GroupKind::Table { rows }
        }
        other => return Err(c.error(&format!("unknown group kind {other}"))),
    };
    Ok(Decl::Group { name, kind })
}

fn parse_product(c: &mut Cursor) -> Result<Decl> {
    let name = c.word("a product name")?.to_string();
    c.symbol("=")?;
    let mut factors = vec![c.word("a factor name")?.to_string()];
    while c.try_symbol("x") {
        factors.push(c.word("a factor name")?.to_string());
    }
    if factors.len() < 2 {
        return Err(c.error("a product needs at least two factors"));
    }
    Ok(Decl::Product { name, factors })
}

fn parse_subgroup(c: &mut Cursor) -> Result<Decl> {
    let name = c.word("a subgroup name")?.to_string();
    c.symbol("in")?;
    let product = c.word("a product name")?.to_string();
    let value = c.attr_str("gens")?;
    let mut gens = Vec::new();
    for tuple in split_top(value, ';') {
        let inner = tuple
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| c.error(&format!("generator tuple {tuple} is not bracketed")))?;
        gens.push(
            split_top(inner, ',')
                .into_iter()
                .map(str::to_string)
                .collect(),
        );
    }
    if gens.is_empty() {
        return Err(c.error("a subgroup needs at least one generator tuple"));
    }
    Ok(Decl::Subgroup {
        name,
        product,
        gens,
    })
}

fn parse_hom(c: &mut Cursor) -> Result<Decl> {
    let name = c.word("a homomorphism name")?.to_string();
    c.symbol(":")?;
    let domain = c.word("a domain name")?.to_string();
    c.symbol("->")?;
    let codomain = c.word("a codomain name")?.to_string();
    let value = c.attr_str("map")?;
    let pairs = parse_pairs(c, value)?;
    Ok(Decl::Hom {
        name,
        domain,
        codomain,
        pairs,
    })
}

fn parse_present(c: &mut Cursor) -> Result<Decl> {
    let name = c.word("a presentation name")?.to_string();
    c.symbol("=")?;
    c.symbol("[")?;
    let source = c.word("a source group name")?.to_string();
    c.symbol(";")?;
    let mut maps = vec![c.word("a homomorphism name")?.to_string()];
    while c.try_symbol(",") {
        maps.push(c.word("a homomorphism name")?.to_string());
    }
    c.symbol("]")?;
    Ok(Decl::Present { name, source, maps })
}

fn parse_goursat(c: &mut Cursor) -> Result<Decl> {
    let name = c.word("a construction name")?.to_string();
    c.symbol("in")?;
    let product = c.word("a product name")?.to_string();
    c.symbol(":")?;
    let list = |c: &mut Cursor, key: &str| -> Result<Vec<String>> {
        Ok(split_top(c.attr_str(key)?, ',')
            .into_iter()
            .map(str::to_string)
            .collect())
    };
    let i = list(c, "i")?;
    let k = list(c, "k")?;
    let j = list(c, "j")?;
    let l = list(c, "l")?;
    let value = c.attr_str("sigma")?;
    let sigma = parse_pairs(c, value)?;
    Ok(Decl::Goursat {
        name,
        product,
        i,
        k,
        j,
        l,
        sigma,
    })
}

fn parse_pullback(c: &mut Cursor) -> Result<Decl> {
    let name = c.word("a construction name")?.to_string();
    c.symbol("=")?;
    c.symbol("(")?;
    let mut maps = vec![c.word("a homomorphism name")?.to_string()];
    while c.try_symbol(",") {
        maps.push(c.word("a homomorphism name")?.to_string());
    }
    c.symbol(")")?;
    if maps.len() < 2 {
        return Err(c.error("a pullback needs at least two maps"));
    }
    Ok(Decl::Pullback { name, maps })
}

fn parse_pairs(c: &Cursor, value: &str) -> Result<Vec<(String, String)>> {
    let mut pairs = Vec::new();
    for entry in split_top(value, ',') {
        let parts = split_top(entry, ':');
        if parts.len() != 2 {
            return Err(c.error(&format!("expected NAME:NAME in pair list, found {entry}")));
        }
        pairs.push((parts[0].to_string(), parts[1].to_string()));
    }
    if pairs.is_empty() {
        return Err(c.error("an empty pair list"));
    }
    Ok(pairs)
}

/// Splits on `sep` at bracket depth zero, trimming each piece. Depth counts
/// `(`/`)` and `[`/`]`, so tuple names like `[0, 1]` survive a comma split.
fn split_top(text: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (idx, ch) in text.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth = depth.saturating_sub(1),
            c if c == sep && depth == 0 => {
                parts.push(text[start..idx].trim());
                start = idx + ch.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(text[start..].trim());
    parts.retain(|p| !p.is_empty());
    parts
}

/// A scanning cursor over one input line. Errors carry the line number and
/// the one-based column where scanning stopped.
struct Cursor<'a> {
    line_no: usize,
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn error(&self, msg: &str) -> Error {
        Error::Input(format!(
            "line {}, column {}: {msg}",
            self.line_no,
            self.pos + 1
        ))
    }

    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with([' ', '\t']) {
            self.pos += 1;
        }
    }

    /// A bare token: letters, digits and underscores.
    fn word(&mut self, what: &str) -> Result<&'a str> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest
            .char_indices()
            .take_while(|(_, ch)| ch.is_ascii_alphanumeric() || *ch == '_')
            .count();
        if len == 0 {
            return Err(self.error(&format!("expected {what}")));
        }
        let token = &rest[..len];
        self.pos += len;
        Ok(token)
    }

    fn symbol(&mut self, tok: &str) -> Result<()> {
        if !self.try_symbol(tok) {
            return Err(self.error(&format!("expected {tok}")));
        }
        Ok(())
    }

    fn try_symbol(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    /// `key="value"`, returning the raw text between the quotes.
    fn attr_str(&mut self, key: &str) -> Result<&'a str> {
        self.symbol(key)?;
        self.symbol("=")?;
        self.symbol("\"")?;
        let rest = &self.text[self.pos..];
        let close = rest
            .find('"')
            .ok_or_else(|| self.error("unterminated quoted value"))?;
        let value = &rest[..close];
        self.pos += close + 1;
        Ok(value)
    }

    /// `key=N` with a bare decimal value.
    fn attr_num(&mut self, key: &str) -> Result<usize> {
        self.symbol(key)?;
        self.symbol("=")?;
        let digits = self.word("a number")?;
        digits
            .parse()
            .map_err(|_| self.error(&format!("{key} must be a number, found {digits}")))
    }

    fn end(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos < self.text.len() {
            return Err(self.error("unexpected trailing input"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn round_trip(text: &str) {
        let doc = Document::parse(text).unwrap();
        let rendered = doc.render();
        let again = Document::parse(&rendered).unwrap();
        assert_eq!(doc, again, "render/parse round trip changed the document");
        assert_eq!(rendered, again.render(), "rendering is not a fixed point");
    }

    #[test]
    fn parses_every_declaration_form() {
        let text = r#"
# a fixture exercising the whole grammar
group Z4 cyclic order=4
group S3 perm degree=3 gens="(1 2);(1 2 3)"
group K table rows="0 1;1 0"
product P = Z4 x S3
subgroup U in P gens="[1,(1 2)];[2,()]"
hom f : Z4 -> K map="1:1"
present Q = [Z4; f, f]
goursat G in P : i="0,1,2,3" k="0,2" j="(),(1 2)" l="()" sigma="0:0, 1:1"
pullback B = (f, f)
"#;
        let doc = Document::parse(text).unwrap();
        assert_eq!(doc.decls().len(), 9);
        assert_eq!(doc.decl("U").unwrap().kind_word(), "subgroup");
        round_trip(text);
    }

    #[test]
    fn tuple_element_names_survive_comma_splitting() {
        let text = "group A cyclic order=2\ngroup B cyclic order=2\nproduct P = A x B\n\
                    group C cyclic order=2\nhom f : P -> C map=\"[0, 1]:1, [1, 0]:1\"\n";
        let doc = Document::parse(text).unwrap();
        match doc.decl("f").unwrap() {
            Decl::Hom { pairs, .. } => {
                assert_eq!(pairs[0], ("[0, 1]".to_string(), "1".to_string()));
                assert_eq!(pairs[1], ("[1, 0]".to_string(), "1".to_string()));
            }
            _ => panic!("expected a hom"),
        }
        round_trip(text);
    }

    #[test]
    fn errors_carry_line_and_column() {
        let err = Document::parse("group Z4 cyclic order=4\nwhat Z2\n").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 2"), "missing line number: {msg}");
        assert!(msg.contains("unknown declaration keyword what"), "{msg}");
    }

    #[test]
    fn duplicate_names_are_rejected() {
        let err = Document::parse("group A cyclic order=2\ngroup A cyclic order=3\n").unwrap_err();
        assert!(err.to_string().contains("duplicate name A"));
    }

    #[test]
    fn trailing_garbage_is_rejected() {
        let err = Document::parse("group A cyclic order=2 extra\n").unwrap_err();
        assert!(err.to_string().contains("unexpected trailing input"));
    }

    #[test]
    fn unterminated_quote_is_rejected() {
        let err = Document::parse("group P perm degree=3 gens=\"(1 2)\n").unwrap_err();
        assert!(err.to_string().contains("unterminated"));
    }

    #[test]
    fn single_factor_product_is_rejected() {
        let err = Document::parse("group A cyclic order=2\nproduct P = A\n").unwrap_err();
        assert!(err.to_string().contains("at least two factors"));
    }
}
