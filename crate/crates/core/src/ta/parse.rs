use super::{ClockConstraint, Edge, Guard, Location, Relation, TaError, TimedAutomaton};
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Num(u32),
    Op(&'static str),
    Comma,
    Arrow,
}

struct Lexed {
    tok: Tok,
    col: usize,
}

fn lex(line: &str, lineno: usize) -> Result<Vec<Lexed>, TaError> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c == '#' {
            break;
        } else if c == ',' {
            out.push(Lexed { tok: Tok::Comma, col });
            i += 1;
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push(Lexed { tok: Tok::Arrow, col });
            i += 2;
        } else if c == '<' || c == '>' {
            let eq = chars.get(i + 1) == Some(&'=');
            let op = match (c, eq) {
                ('<', false) => "<",
                ('<', true) => "<=",
                ('>', false) => ">",
                _ => ">=",
            };
            out.push(Lexed { tok: Tok::Op(op), col });
            i += if eq { 2 } else { 1 };
        } else if c == '=' {
            out.push(Lexed { tok: Tok::Op("="), col });
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let n = text.parse().map_err(|_| TaError::Syntax {
                line: lineno,
                col,
                message: format!("number `{text}` out of range"),
            })?;
            out.push(Lexed { tok: Tok::Num(n), col });
        } else if c.is_alphanumeric() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push(Lexed { tok: Tok::Word(chars[start..i].iter().collect()), col });
        } else {
            return Err(TaError::Syntax { line: lineno, col, message: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Cursor<'a> {
    toks: &'a [Lexed],
    pos: usize,
    line: usize,
    eol_col: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.eol_col, |t| t.col)
    }

    fn err(&self, message: impl Into<String>) -> TaError {
        TaError::Syntax { line: self.line, col: self.col(), message: message.into() }
    }

    fn next(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.pos).map(|t| &t.tok);
        self.pos += 1;
        t
    }

    fn word(&mut self, what: &str) -> Result<String, TaError> {
        match self.peek() {
            Some(Tok::Word(w)) => {
                let w = w.clone();
                self.pos += 1;
                Ok(w)
            }
            _ => Err(self.err(format!("expected {what}"))),
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Word(w)) if w == kw) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn comma(&mut self) -> bool {
        if self.peek() == Some(&Tok::Comma) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn done(&self) -> bool {
        self.pos >= self.toks.len()
    }
}

struct Ctx {
    clocks: Vec<String>,
    alphabet: Vec<String>,
}

impl Ctx {
    fn clock(&self, name: &str, line: usize) -> Result<usize, TaError> {
        self.clocks
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| TaError::Undeclared { line, kind: "clock", name: name.to_string() })
    }
}

fn parse_guard(cur: &mut Cursor, ctx: &Ctx) -> Result<Guard, TaError> {
    let mut constraints = Vec::new();
    let mut equalities = Vec::new();
    loop {
        let name = cur.word("clock name in guard")?;
        let clock = ctx.clock(&name, cur.line)?;
        let op = match cur.next() {
            Some(Tok::Op(op)) => *op,
            _ => {
                cur.pos -= 1;
                return Err(cur.err("expected comparison operator"));
            }
        };
        let bound = match cur.next() {
            Some(Tok::Num(n)) => *n,
            _ => {
                cur.pos -= 1;
                return Err(cur.err("expected natural-number bound"));
            }
        };
        match op {
            "<" => constraints.push(ClockConstraint { clock, relation: Relation::Lt, bound }),
            "<=" => constraints.push(ClockConstraint { clock, relation: Relation::Le, bound }),
            ">" => constraints.push(ClockConstraint { clock, relation: Relation::Gt, bound }),
            ">=" => constraints.push(ClockConstraint { clock, relation: Relation::Ge, bound }),
            _ => {
                constraints.push(ClockConstraint { clock, relation: Relation::Le, bound });
                constraints.push(ClockConstraint { clock, relation: Relation::Ge, bound });
                equalities.push(clock);
            }
        }
        if !cur.comma() {
            break;
        }
    }
    let guard = Guard { constraints };
    let intervals = guard.intervals(ctx.clocks.len());
    if let Some(&c) = equalities.iter().find(|&&c| intervals[c].is_empty()) {
        return Err(TaError::EqualityConflict { line: cur.line, clock: ctx.clocks[c].clone() });
    }
    Ok(guard)
}

fn parse_name_list(cur: &mut Cursor, what: &str) -> Result<Vec<String>, TaError> {
    let mut out = vec![cur.word(what)?];
    while cur.comma() {
        out.push(cur.word(what)?);
    }
    Ok(out)
}

/// Parses the line-oriented automaton grammar.
pub fn parse_automaton(text: &str) -> Result<TimedAutomaton, TaError> {
    let mut name = String::new();
    let mut ctx = Ctx { clocks: Vec::new(), alphabet: Vec::new() };
    let mut locations: Vec<Location> = Vec::new();
    // Edges refer to locations by name and may precede their declaration.
    let mut pending: Vec<(usize, String, String, Vec<usize>, Guard, Vec<usize>)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks = lex(raw, line)?;
        if toks.is_empty() {
            continue;
        }
        let mut cur = Cursor { toks: &toks, pos: 0, line, eol_col: raw.chars().count() + 1 };
        let head = cur.word("a declaration keyword")?;
        match head.as_str() {
            "automaton" => name = cur.word("automaton name")?,
            "clocks" => {
                while !cur.done() {
                    let c = cur.word("clock name")?;
                    if ctx.clocks.contains(&c) {
                        return Err(cur.err(format!("clock `{c}` declared twice")));
                    }
                    ctx.clocks.push(c);
                    cur.comma();
                }
            }
            "alphabet" => {
                while !cur.done() {
                    let a = cur.word("letter")?;
                    if !ctx.alphabet.contains(&a) {
                        ctx.alphabet.push(a);
                    }
                    cur.comma();
                }
            }
            "location" => {
                let lname = cur.word("location name")?;
                if locations.iter().any(|l| l.name == lname) {
                    return Err(cur.err(format!("location `{lname}` declared twice")));
                }
                let mut initial = None;
                let mut accepting = None;
                if cur.keyword("initial") {
                    let mut v = vec![0u32; ctx.clocks.len()];
                    while let Some(Tok::Word(w)) = cur.peek() {
                        if w == "accepting" {
                            break;
                        }
                        let c = cur.word("clock name")?;
                        let ci = ctx.clock(&c, line)?;
                        if cur.next() != Some(&Tok::Op("=")) {
                            cur.pos -= 1;
                            return Err(cur.err("expected `=` in initial valuation"));
                        }
                        match cur.next() {
                            Some(Tok::Num(n)) => v[ci] = *n,
                            _ => {
                                cur.pos -= 1;
                                return Err(cur.err("expected natural-number clock value"));
                            }
                        }
                        cur.comma();
                    }
                    initial = Some(v);
                }
                if cur.keyword("accepting") {
                    accepting = Some(if cur.done() { Guard::always() } else { parse_guard(&mut cur, &ctx)? });
                }
                if !cur.done() {
                    return Err(cur.err("unexpected trailing tokens"));
                }
                locations.push(Location { name: lname, initial, accepting });
            }
            "edge" => {
                let src = cur.word("source location")?;
                if cur.next() != Some(&Tok::Arrow) {
                    cur.pos -= 1;
                    return Err(cur.err("expected `->`"));
                }
                let dst = cur.word("target location")?;
                if !cur.keyword("on") {
                    return Err(cur.err("expected `on`"));
                }
                let mut labels = Vec::new();
                for l in parse_name_list(&mut cur, "letter")? {
                    let li = ctx
                        .alphabet
                        .iter()
                        .position(|a| *a == l)
                        .ok_or(TaError::Undeclared { line, kind: "letter", name: l })?;
                    labels.push(li);
                }
                let guard = if cur.keyword("guard") { parse_guard(&mut cur, &ctx)? } else { Guard::always() };
                let mut resets = Vec::new();
                if cur.keyword("reset") {
                    for c in parse_name_list(&mut cur, "clock name")? {
                        resets.push(ctx.clock(&c, line)?);
                    }
                }
                if !cur.done() {
                    return Err(cur.err("unexpected trailing tokens"));
                }
                resets.sort_unstable();
                resets.dedup();
                pending.push((line, src, dst, labels, guard, resets));
            }
            other => {
                cur.pos -= 1;
                return Err(cur.err(format!("unknown declaration `{other}`")));
            }
        }
    }

    let loc = |n: &str, line: usize| {
        locations
            .iter()
            .position(|l| l.name == n)
            .ok_or_else(|| TaError::Undeclared { line, kind: "location", name: n.to_string() })
    };
    let mut edges = Vec::new();
    for (line, src, dst, labels, guard, resets) in pending {
        let (s, d) = (loc(&src, line)?, loc(&dst, line)?);
        for label in labels {
            edges.push(Edge { src: s, dst: d, label, guard: guard.clone(), resets: resets.clone() });
        }
    }
    let mut a = TimedAutomaton {
        name,
        clocks: ctx.clocks,
        alphabet: ctx.alphabet,
        locations,
        edges,
        max_constant: 0,
    };
    if a.initial_locations().is_empty() {
        return Err(TaError::NoInitial);
    }
    a.max_constant = a.compute_max_constant();
    Ok(a)
}

fn write_guard(out: &mut String, a: &TimedAutomaton, g: &Guard) {
    let parts: Vec<String> = g
        .constraints
        .iter()
        .map(|c| format!("{}{}{}", a.clocks[c.clock], c.relation.symbol(), c.bound))
        .collect();
    out.push_str(&parts.join(", "));
}

/// Canonical text form; parsing it yields a structurally equal automaton.
pub fn serialize_automaton(a: &TimedAutomaton) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "automaton {}", if a.name.is_empty() { "unnamed" } else { &a.name });
    if !a.clocks.is_empty() {
        let _ = writeln!(out, "clocks {}", a.clocks.join(" "));
    }
    let _ = writeln!(out, "alphabet {}", a.alphabet.join(" "));
    for l in &a.locations {
        out.push_str("location ");
        out.push_str(&l.name);
        if let Some(v) = &l.initial {
            out.push_str(" initial");
            let parts: Vec<String> = a.clocks.iter().zip(v).map(|(c, n)| format!("{c}={n}")).collect();
            if !parts.is_empty() {
                out.push(' ');
                out.push_str(&parts.join(","));
            }
        }
        if let Some(g) = &l.accepting {
            out.push_str(" accepting");
            if !g.constraints.is_empty() {
                out.push(' ');
                write_guard(&mut out, a, g);
            }
        }
        out.push('\n');
    }
    for e in &a.edges {
        let _ = write!(
            out,
            "edge {} -> {} on {}",
            a.locations[e.src].name, a.locations[e.dst].name, a.alphabet[e.label]
        );
        if !e.guard.constraints.is_empty() {
            out.push_str(" guard ");
            write_guard(&mut out, a, &e.guard);
        }
        if !e.resets.is_empty() {
            let names: Vec<&str> = e.resets.iter().map(|&c| a.clocks[c].as_str()).collect();
            let _ = write!(out, " reset {}", names.join(","));
        }
        out.push('\n');
    }
    out
}
