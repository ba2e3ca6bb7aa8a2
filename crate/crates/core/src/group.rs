//! The minimal group interface shared by equation cascades.

use std::fmt::Debug;

use crate::gp::{GPElement, GraphProduct};
use crate::vertex::Integers;

pub trait Group {
    type Element: Clone + PartialEq + Debug;

    fn identity(&self) -> Self::Element;
    fn multiply(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn invert(&self, a: &Self::Element) -> Self::Element;
    fn power(&self, a: &Self::Element, n: i64) -> Self::Element;
    fn render(&self, a: &Self::Element) -> String;
}

impl Group for GraphProduct {
    type Element = GPElement;

    fn identity(&self) -> GPElement {
        GraphProduct::identity(self)
    }

    fn multiply(&self, a: &GPElement, b: &GPElement) -> GPElement {
        GraphProduct::multiply(self, a, b)
    }

    fn invert(&self, a: &GPElement) -> GPElement {
        GraphProduct::invert(self, a)
    }

    fn power(&self, a: &GPElement, n: i64) -> GPElement {
        GraphProduct::power(self, a, n)
    }

    fn render(&self, a: &GPElement) -> String {
        GraphProduct::render(self, a)
    }
}

impl Group for Integers {
    type Element = i64;

    fn identity(&self) -> i64 {
        0
    }

    fn multiply(&self, a: &i64, b: &i64) -> i64 {
        a + b
    }

    fn invert(&self, a: &i64) -> i64 {
        -a
    }

    fn power(&self, a: &i64, n: i64) -> i64 {
        a * n
    }

    fn render(&self, a: &i64) -> String {
        a.to_string()
    }
}
