use std::fmt;

macro_rules! string_id {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
        pub struct $name(pub String);

        impl $name {
            pub fn new(s: impl Into<String>) -> Self {
                $name(s.into())
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                $name(s.to_owned())
            }
        }

        impl From<String> for $name {
            fn from(s: String) -> Self {
                $name(s)
            }
        }
    };
}

string_id!(
    /// Node identifier in a finite graph.
    NodeId
);
string_id!(
    /// Edge identifier in a finite graph.
    EdgeId
);
string_id!(
    /// Object identifier in a finite category.
    ObjId
);
string_id!(
    /// Morphism identifier in a finite category.
    MorId
);
string_id!(
    /// Element label of a finite set. Labels are opaque; lexicographic order
    /// on the underlying string is the canonical order everywhere.
    Elem
);
