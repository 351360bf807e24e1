//! Symbolic order types for the built-in families and a signature-based
//! refutation of type-2 co-order.
//!
//! The algebra is deliberately small: finite blocks, `ω`, `ω*`, dense blocks
//! with or without endpoints, and finite concatenations of those. Normal
//! forms apply only absorption laws that are genuine isomorphisms
//! (`n + ω ≅ ω`, `ω* + n ≅ ω*`, and gluing of dense blocks), so two
//! different normal forms never describe the same order.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::sequences::SetSpec;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OrderType {
    Fin(u64),
    Omega,
    OmegaStar,
    Dense { left: bool, right: bool },
    Concat(Vec<OrderType>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Direction {
    Asc,
    Desc,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Asc => "ASC",
            Direction::Desc => "DESC",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderTypeError {
    #[error("set {0} has no order-type descriptor")]
    NoDescriptor(String),
    #[error("descriptor {0} is not a concatenation of W/W* blocks")]
    UnsupportedShape(String),
    #[error("cannot parse order type {0:?}")]
    Parse(String),
}

/// Combines two adjacent blocks when their concatenation is isomorphic to a
/// single block.
fn absorb(left: &OrderType, right: &OrderType) -> Option<OrderType> {
    use OrderType::*;
    match (left, right) {
        (Fin(a), Fin(b)) => Some(Fin(a + b)),
        (Fin(_), Omega) => Some(Omega),
        (OmegaStar, Fin(_)) => Some(OmegaStar),
        (Fin(1), Dense { left: false, right }) => Some(Dense {
            left: true,
            right: *right,
        }),
        (Dense { left, right: false }, Fin(1)) => Some(Dense {
            left: *left,
            right: true,
        }),
        (
            Dense {
                left: l1,
                right: r1,
            },
            Dense {
                left: l2,
                right: r2,
            },
        ) if !(*r1 && *l2) => Some(Dense {
            left: *l1,
            right: *r2,
        }),
        _ => None,
    }
}

fn flatten_into(d: &OrderType, out: &mut Vec<OrderType>) {
    match d {
        OrderType::Concat(parts) => parts.iter().for_each(|p| flatten_into(p, out)),
        OrderType::Fin(0) => {}
        other => out.push(other.clone()),
    }
}

impl OrderType {
    pub fn concat(parts: impl IntoIterator<Item = OrderType>) -> OrderType {
        OrderType::Concat(parts.into_iter().collect()).normalize()
    }

    pub fn normalize(&self) -> OrderType {
        let mut flat = Vec::new();
        flatten_into(self, &mut flat);
        let mut stack: Vec<OrderType> = Vec::with_capacity(flat.len());
        for block in flat {
            let mut next = block;
            while let Some(top) = stack.last() {
                match absorb(top, &next) {
                    Some(merged) => {
                        stack.pop();
                        next = merged;
                    }
                    None => break,
                }
            }
            stack.push(next);
        }
        match stack.len() {
            0 => OrderType::Fin(0),
            1 => stack.pop().unwrap(),
            _ => OrderType::Concat(stack),
        }
    }

    pub fn is_normalized(&self) -> bool {
        *self == self.normalize()
    }

    /// Blocks of the normal form, in order.
    pub fn blocks(&self) -> Vec<OrderType> {
        match self.normalize() {
            OrderType::Concat(parts) => parts,
            OrderType::Fin(0) => Vec::new(),
            single => vec![single],
        }
    }

    pub fn isomorphic(&self, other: &OrderType) -> bool {
        self.normalize() == other.normalize()
    }

    /// The order read backwards.
    pub fn reverse(&self) -> OrderType {
        use OrderType::*;
        match self {
            Fin(k) => Fin(*k),
            Omega => OmegaStar,
            OmegaStar => Omega,
            Dense { left, right } => Dense {
                left: *right,
                right: *left,
            },
            Concat(parts) => Concat(parts.iter().rev().map(|p| p.reverse()).collect()),
        }
        .normalize()
    }

    /// The order with its least element removed, or `None` if it has no least
    /// element.
    pub fn without_min(&self) -> Option<OrderType> {
        let mut blocks = self.blocks();
        let first = blocks.first()?.clone();
        let replaced = match first {
            OrderType::Fin(k) => OrderType::Fin(k - 1),
            OrderType::Omega => OrderType::Omega,
            OrderType::Dense { left: true, right } => OrderType::Dense { left: false, right },
            _ => return None,
        };
        blocks[0] = replaced;
        Some(OrderType::Concat(blocks).normalize())
    }

    pub fn has_min(&self) -> bool {
        matches!(
            self.blocks().first(),
            Some(OrderType::Fin(_) | OrderType::Omega | OrderType::Dense { left: true, .. })
        )
    }

    pub fn has_max(&self) -> bool {
        matches!(
            self.blocks().last(),
            Some(OrderType::Fin(_) | OrderType::OmegaStar | OrderType::Dense { right: true, .. })
        )
    }

    /// True when every block is infinite and discrete (`ω` or `ω*`).
    pub fn is_discrete_infinite(&self) -> bool {
        let blocks = self.blocks();
        !blocks.is_empty()
            && blocks
                .iter()
                .all(|b| matches!(b, OrderType::Omega | OrderType::OmegaStar))
    }

    /// Directions of the infinite discrete blocks, ignoring finite blocks.
    pub fn signature(&self) -> Result<Vec<Direction>, OrderTypeError> {
        self.blocks()
            .iter()
            .filter_map(|b| match b {
                OrderType::Fin(_) => None,
                OrderType::Omega => Some(Ok(Direction::Asc)),
                OrderType::OmegaStar => Some(Ok(Direction::Desc)),
                _ => Some(Err(OrderTypeError::UnsupportedShape(self.to_string()))),
            })
            .collect()
    }
}

impl fmt::Display for OrderType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderType::Fin(k) => write!(f, "FIN({k})"),
            OrderType::Omega => f.write_str("W"),
            OrderType::OmegaStar => f.write_str("W*"),
            OrderType::Dense { left, right } => write!(
                f,
                "Q{}a,b{}",
                if *left { '[' } else { '(' },
                if *right { ']' } else { ')' }
            ),
            OrderType::Concat(parts) => {
                for (k, p) in parts.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for OrderType {
    type Err = OrderTypeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || OrderTypeError::Parse(s.to_string());
        let blocks = s
            .split('+')
            .map(|part| {
                let t = part.trim();
                match t {
                    "W" => Ok(OrderType::Omega),
                    "W*" => Ok(OrderType::OmegaStar),
                    "Q[a,b]" => Ok(OrderType::Dense {
                        left: true,
                        right: true,
                    }),
                    "Q[a,b)" => Ok(OrderType::Dense {
                        left: true,
                        right: false,
                    }),
                    "Q(a,b]" => Ok(OrderType::Dense {
                        left: false,
                        right: true,
                    }),
                    "Q(a,b)" => Ok(OrderType::Dense {
                        left: false,
                        right: false,
                    }),
                    _ => t
                        .strip_prefix("FIN(")
                        .and_then(|r| r.strip_suffix(')'))
                        .and_then(|k| k.trim().parse().ok())
                        .map(OrderType::Fin)
                        .ok_or_else(bad),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(if blocks.len() == 1 {
            blocks.into_iter().next().unwrap()
        } else {
            OrderType::Concat(blocks)
        })
    }
}

pub fn isomorphic(d1: &OrderType, d2: &OrderType) -> bool {
    d1.isomorphic(d2)
}

pub fn block_signature(spec: &SetSpec) -> Result<Vec<Direction>, OrderTypeError> {
    spec.descriptor()
        .ok_or_else(|| OrderTypeError::NoDescriptor(spec.label().to_string()))?
        .signature()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Type2Verdict {
    Refuted { reason: String },
    Unknown,
}

impl Type2Verdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Type2Verdict::Refuted { .. })
    }
}

fn show_signature(sig: &[Direction]) -> String {
    let parts: Vec<String> = sig.iter().map(|d| d.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// Finite edits leave the sequence of infinite blocks untouched, so two sets
/// whose signatures differ cannot be type-2 co-order.
pub fn refute_type2(a: &SetSpec, b: &SetSpec) -> Type2Verdict {
    match (block_signature(a), block_signature(b)) {
        (Ok(sa), Ok(sb)) if sa != sb => Type2Verdict::Refuted {
            reason: format!(
                "signature {} != {}",
                show_signature(&sa),
                show_signature(&sb)
            ),
        },
        _ => Type2Verdict::Unknown,
    }
}

#[cfg(test)]
mod tests {
    use super::OrderType::*;
    use super::*;

    #[test]
    fn normalize_examples() {
        assert_eq!(Concat(vec![Fin(2), Fin(3)]).normalize(), Fin(5));
        assert_eq!(Concat(vec![Omega]).normalize(), Omega);
        assert_eq!(
            Concat(vec![Concat(vec![Omega, OmegaStar])]).normalize(),
            Concat(vec![Omega, OmegaStar])
        );
        assert_eq!(Concat(vec![Fin(0), Omega, Fin(0)]).normalize(), Omega);
        assert_eq!(Concat(vec![]).normalize(), Fin(0));
    }

    #[test]
    fn absorption_laws() {
        assert_eq!(OrderType::concat([Fin(4), Omega]), Omega);
        assert_eq!(OrderType::concat([OmegaStar, Fin(2)]), OmegaStar);
        // ω + 1 is not ω
        assert_eq!(
            OrderType::concat([Omega, Fin(1)]),
            Concat(vec![Omega, Fin(1)])
        );
        // ω + 1 + ω ≅ ω + ω
        assert_eq!(
            OrderType::concat([Omega, Fin(1), Omega]),
            Concat(vec![Omega, Omega])
        );
        let open = Dense {
            left: false,
            right: false,
        };
        assert_eq!(
            OrderType::concat([Fin(1), open.clone()]),
            Dense {
                left: true,
                right: false
            }
        );
        assert_eq!(
            OrderType::concat([open.clone(), Fin(1), open.clone()]),
            open
        );
        let closed = Dense {
            left: true,
            right: true,
        };
        // a jump between two endpoints is not dense
        assert_eq!(
            OrderType::concat([closed.clone(), closed.clone()]),
            Concat(vec![closed.clone(), closed])
        );
    }

    #[test]
    fn normalize_is_idempotent() {
        let samples = [
            Concat(vec![Fin(1), Concat(vec![Fin(2), OmegaStar]), Fin(3), Omega]),
            Concat(vec![
                Dense {
                    left: false,
                    right: true,
                },
                Fin(1),
                Omega,
            ]),
            Concat(vec![Omega, OmegaStar, Omega]),
        ];
        for d in samples {
            let n = d.normalize();
            assert_eq!(n.normalize(), n);
            assert!(d.isomorphic(&n));
        }
    }

    #[test]
    fn isomorphic_examples() {
        assert!(!Omega.isomorphic(&OmegaStar));
        assert!(!Concat(vec![Omega, OmegaStar]).isomorphic(&Omega));
        let d = Concat(vec![Omega, OmegaStar, Omega]);
        assert!(d.isomorphic(&d));
    }

    #[test]
    fn reverse_and_min() {
        assert_eq!(
            Concat(vec![Omega, OmegaStar, Omega]).reverse(),
            Concat(vec![OmegaStar, Omega, OmegaStar])
        );
        assert_eq!(Omega.without_min(), Some(Omega));
        assert_eq!(OmegaStar.without_min(), None);
        assert_eq!(Fin(3).without_min(), Some(Fin(2)));
        assert!(OmegaStar.has_max() && !OmegaStar.has_min());
    }

    #[test]
    fn text_round_trip() {
        for text in ["FIN(3)", "W", "W*", "Q[a,b]", "Q(a,b]", "W + W* + W"] {
            let d: OrderType = text.parse().unwrap();
            assert_eq!(d.to_string(), text);
        }
        assert!("W**".parse::<OrderType>().is_err());
        assert!("FIN(x)".parse::<OrderType>().is_err());
    }

    #[test]
    fn signature_rejects_dense() {
        assert!(Dense {
            left: true,
            right: true
        }
        .signature()
        .is_err());
        assert_eq!(
            Concat(vec![Omega, Fin(1), OmegaStar]).signature().unwrap(),
            vec![Direction::Asc, Direction::Desc]
        );
    }
}
