use num_bigint::BigInt;

use super::lexer::Span;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(BigInt),
    Var(String, Span),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Division, only by a nonzero constant.
    Div(Box<Expr>, Box<Expr>, Span),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

/// `ring R = QQ[a | x0..x2; y0, y1] / (...);`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingDecl {
    pub name: String,
    pub field: FieldSpec,
    pub params: Vec<String>,
    pub blocks: Vec<Vec<String>>,
    pub modulus: Vec<Expr>,
    pub span: Span,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PayloadKind {
    Ideal,
    Map,
}

impl PayloadKind {
    pub fn keyword(self) -> &'static str {
        match self {
            PayloadKind::Ideal => "ideal",
            PayloadKind::Map => "map",
        }
    }
}

/// `ideal I = (...);` or `map F = (...);`, in the most recent ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyDecl {
    pub kind: PayloadKind,
    pub name: String,
    pub ring: String,
    pub polys: Vec<Expr>,
    pub span: Span,
}

/// A rational number written in a family point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rational {
    pub num: BigInt,
    pub den: BigInt,
}

/// `family F = ideal (...) at (0), (1) trials 5;`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyDecl {
    pub name: String,
    pub ring: String,
    pub kind: PayloadKind,
    pub polys: Vec<Expr>,
    pub points: Vec<Vec<Rational>>,
    pub trials: Option<usize>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CmdKind {
    Segre,
    Polar,
    Nu,
    Table,
    Order,
    Multideg,
    Projdeg,
    Degim,
    Mapdeg,
    Jmult,
    Intdep,
    Psid,
    Scan,
    Report,
}

impl CmdKind {
    pub const ALL: [CmdKind; 14] = [
        CmdKind::Segre,
        CmdKind::Polar,
        CmdKind::Nu,
        CmdKind::Table,
        CmdKind::Order,
        CmdKind::Multideg,
        CmdKind::Projdeg,
        CmdKind::Degim,
        CmdKind::Mapdeg,
        CmdKind::Jmult,
        CmdKind::Intdep,
        CmdKind::Psid,
        CmdKind::Scan,
        CmdKind::Report,
    ];

    pub fn keyword(&self) -> &'static str {
        match self {
            CmdKind::Segre => "segre",
            CmdKind::Polar => "polar",
            CmdKind::Nu => "nu",
            CmdKind::Table => "table",
            CmdKind::Order => "order",
            CmdKind::Multideg => "multideg",
            CmdKind::Projdeg => "projdeg",
            CmdKind::Degim => "degim",
            CmdKind::Mapdeg => "mapdeg",
            CmdKind::Jmult => "jmult",
            CmdKind::Intdep => "intdep",
            CmdKind::Psid => "psid",
            CmdKind::Scan => "scan",
            CmdKind::Report => "report",
        }
    }

    pub fn from_keyword(s: &str) -> Option<CmdKind> {
        Self::ALL.iter().find(|k| k.keyword() == s).cloned()
    }
}

/// What a `scan` command evaluates at each point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScanKind {
    /// `e(n; R/I)` for a multi-index `n`.
    MixedMult(Vec<usize>),
    /// Multidegree of the scheme (for maps, of the graph) of type `n`.
    Multidegree(Vec<usize>),
    DegImage,
    ProjDegrees,
    MapDegree,
    JMult,
    SegreSeq,
    PolarSeq,
    NuSeq,
}

impl ScanKind {
    pub const NAMES: [&'static str; 9] = [
        "mixed-mult",
        "multidegree",
        "deg-image",
        "proj-degrees",
        "map-degree",
        "j-mult",
        "segre-seq",
        "polar-seq",
        "nu-seq",
    ];

    pub fn name(&self) -> String {
        match self {
            ScanKind::MixedMult(n) => format!("mixed-mult({})", join(n)),
            ScanKind::Multidegree(n) => format!("multidegree({})", join(n)),
            ScanKind::DegImage => "deg-image".into(),
            ScanKind::ProjDegrees => "proj-degrees".into(),
            ScanKind::MapDegree => "map-degree".into(),
            ScanKind::JMult => "j-mult".into(),
            ScanKind::SegreSeq => "segre-seq".into(),
            ScanKind::PolarSeq => "polar-seq".into(),
            ScanKind::NuSeq => "nu-seq".into(),
        }
    }
}

fn join(n: &[usize]) -> String {
    n.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(", ")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Command {
    pub kind: CmdKind,
    pub args: Vec<String>,
    pub scan: Option<ScanKind>,
    pub poly: Option<Expr>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Ring(RingDecl),
    Poly(PolyDecl),
    Family(FamilyDecl),
    Cmd(Command),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Session {
    pub stmts: Vec<Stmt>,
}
