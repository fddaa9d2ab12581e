use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use indexmap::{IndexMap, IndexSet};
use thiserror::Error;

/// Identifier of a place. Identifier equality is the only node-equality notion.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlaceId(Arc<str>);

/// Identifier of a transition.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TransitionId(Arc<str>);

macro_rules! id_impls {
    ($ty:ident) => {
        impl $ty {
            pub fn new(id: impl AsRef<str>) -> Self {
                $ty(Arc::from(id.as_ref()))
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}({:?})", stringify!($ty), &*self.0)
            }
        }

        impl<S: AsRef<str>> From<S> for $ty {
            fn from(s: S) -> Self {
                $ty::new(s)
            }
        }
    };
}

id_impls!(PlaceId);
id_impls!(TransitionId);

/// Reserved token used by the textual formats for the silent label.
pub const SILENT_TOKEN: &str = "tau";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("activity name must not be empty")]
    EmptyName,
    #[error("activity name must not equal the reserved silent token {SILENT_TOKEN:?}")]
    ReservedName,
}

/// Transition label: a visible activity or the silent label τ.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Activity(String),
    Silent,
}

impl Label {
    /// Builds an activity label, rejecting the empty string and the reserved
    /// silent token.
    pub fn activity(name: impl Into<String>) -> Result<Label, LabelError> {
        let name = name.into();
        if name.is_empty() {
            Err(LabelError::EmptyName)
        } else if name == SILENT_TOKEN {
            Err(LabelError::ReservedName)
        } else {
            Ok(Label::Activity(name))
        }
    }

    pub fn is_silent(&self) -> bool {
        matches!(self, Label::Silent)
    }

    pub fn as_activity(&self) -> Option<&str> {
        match self {
            Label::Activity(name) => Some(name),
            Label::Silent => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetError {
    #[error("unknown place {0}")]
    UnknownPlace(PlaceId),
    #[error("unknown transition {0}")]
    UnknownTransition(TransitionId),
    #[error("duplicate place id {0}")]
    DuplicatePlace(PlaceId),
    #[error("duplicate transition id {0}")]
    DuplicateTransition(TransitionId),
    #[error("duplicate arc {0} -> {1}")]
    DuplicateArc(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiringError {
    #[error("transition {0} is not enabled")]
    NotEnabled(TransitionId),
    #[error(transparent)]
    Net(#[from] NetError),
}

/// A marking: multiset of places. Zero-count entries are never stored, so
/// derived equality is multiset equality.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct Marking(BTreeMap<PlaceId, u32>);

impl Marking {
    pub fn empty() -> Self {
        Marking::default()
    }

    pub fn of(places: impl IntoIterator<Item = impl Into<PlaceId>>) -> Self {
        let mut m = Marking::empty();
        for p in places {
            m.add(p.into(), 1);
        }
        m
    }

    pub fn add(&mut self, place: PlaceId, count: u32) {
        if count > 0 {
            *self.0.entry(place).or_insert(0) += count;
        }
    }

    /// Removes `count` tokens; callers must know the tokens are present.
    pub(crate) fn remove(&mut self, place: &PlaceId, count: u32) {
        if count == 0 {
            return;
        }
        let current = self.0.get_mut(place).expect("token removal from empty place");
        assert!(*current >= count, "token removal from under-marked place");
        *current -= count;
        if *current == 0 {
            self.0.remove(place);
        }
    }

    pub fn count(&self, place: &PlaceId) -> u32 {
        self.0.get(place).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PlaceId, u32)> {
        self.0.iter().map(|(p, &c)| (p, c))
    }

    pub fn total_tokens(&self) -> u64 {
        self.0.values().map(|&c| u64::from(c)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True when no place holds more than one token.
    pub fn is_set(&self) -> bool {
        self.0.values().all(|&c| c <= 1)
    }
}

impl fmt::Display for Marking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (p, c)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if *c == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{c}")?;
            }
        }
        write!(f, "]")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
struct PlaceEntry {
    pre: IndexSet<TransitionId>,
    post: IndexSet<TransitionId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct TransitionEntry<L> {
    label: L,
    pre: IndexSet<PlaceId>,
    post: IndexSet<PlaceId>,
}

/// A labelled Petri net, generic over the label domain `L`. With `L = Label`
/// this is an ordinary labelled net; with `L = ProcessTree` it is a net whose
/// transitions carry whole process trees.
///
/// Places and transitions iterate in insertion order, arcs reference only
/// declared nodes, and duplicate arcs are rejected, so equal construction
/// sequences yield structurally identical nets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledNet<L> {
    places: IndexMap<PlaceId, PlaceEntry>,
    transitions: IndexMap<TransitionId, TransitionEntry<L>>,
}

impl<L> Default for LabeledNet<L> {
    fn default() -> Self {
        LabeledNet { places: IndexMap::new(), transitions: IndexMap::new() }
    }
}

impl<L> LabeledNet<L> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_place(&mut self, id: impl Into<PlaceId>) -> Result<PlaceId, NetError> {
        let id = id.into();
        if self.places.contains_key(&id) {
            return Err(NetError::DuplicatePlace(id));
        }
        self.places.insert(id.clone(), PlaceEntry::default());
        Ok(id)
    }

    pub fn add_transition(
        &mut self,
        id: impl Into<TransitionId>,
        label: L,
    ) -> Result<TransitionId, NetError> {
        let id = id.into();
        if self.transitions.contains_key(&id) {
            return Err(NetError::DuplicateTransition(id));
        }
        self.transitions
            .insert(id.clone(), TransitionEntry { label, pre: IndexSet::new(), post: IndexSet::new() });
        Ok(id)
    }

    /// Adds an arc from a place to a transition.
    pub fn add_arc_pt(&mut self, place: &PlaceId, trans: &TransitionId) -> Result<(), NetError> {
        if !self.places.contains_key(place) {
            return Err(NetError::UnknownPlace(place.clone()));
        }
        if !self.transitions.contains_key(trans) {
            return Err(NetError::UnknownTransition(trans.clone()));
        }
        let inserted = self.transitions[trans].pre.insert(place.clone());
        if !inserted {
            return Err(NetError::DuplicateArc(place.to_string(), trans.to_string()));
        }
        self.places[place].post.insert(trans.clone());
        Ok(())
    }

    /// Adds an arc from a transition to a place.
    pub fn add_arc_tp(&mut self, trans: &TransitionId, place: &PlaceId) -> Result<(), NetError> {
        if !self.places.contains_key(place) {
            return Err(NetError::UnknownPlace(place.clone()));
        }
        if !self.transitions.contains_key(trans) {
            return Err(NetError::UnknownTransition(trans.clone()));
        }
        let inserted = self.transitions[trans].post.insert(place.clone());
        if !inserted {
            return Err(NetError::DuplicateArc(trans.to_string(), place.to_string()));
        }
        self.places[place].pre.insert(trans.clone());
        Ok(())
    }

    pub fn contains_place(&self, id: &PlaceId) -> bool {
        self.places.contains_key(id)
    }

    pub fn contains_transition(&self, id: &TransitionId) -> bool {
        self.transitions.contains_key(id)
    }

    pub fn place_count(&self) -> usize {
        self.places.len()
    }

    pub fn transition_count(&self) -> usize {
        self.transitions.len()
    }

    /// |P| + |T|, the size measure used by the benchmark harness.
    pub fn size(&self) -> usize {
        self.places.len() + self.transitions.len()
    }

    pub fn places(&self) -> impl Iterator<Item = &PlaceId> {
        self.places.keys()
    }

    pub fn transitions(&self) -> impl Iterator<Item = &TransitionId> {
        self.transitions.keys()
    }

    pub fn label(&self, trans: &TransitionId) -> Result<&L, NetError> {
        self.transitions
            .get(trans)
            .map(|e| &e.label)
            .ok_or_else(|| NetError::UnknownTransition(trans.clone()))
    }

    /// Position of a transition in net iteration order.
    pub(crate) fn transition_position(&self, trans: &TransitionId) -> Option<usize> {
        self.transitions.get_index_of(trans)
    }

    pub fn arc_count(&self) -> usize {
        self.transitions.values().map(|e| e.pre.len() + e.post.len()).sum()
    }

    /// All arcs, transitions in net order, each transition's incoming arcs
    /// before its outgoing ones.
    pub fn arcs(&self) -> impl Iterator<Item = (String, String)> + '_ {
        self.transitions.iter().flat_map(|(t, e)| {
            e.pre
                .iter()
                .map(move |p| (p.to_string(), t.to_string()))
                .chain(e.post.iter().map(move |p| (t.to_string(), p.to_string())))
        })
    }

    pub fn place_preset(&self, place: &PlaceId) -> Result<&IndexSet<TransitionId>, NetError> {
        self.places.get(place).map(|e| &e.pre).ok_or_else(|| NetError::UnknownPlace(place.clone()))
    }

    pub fn place_postset(&self, place: &PlaceId) -> Result<&IndexSet<TransitionId>, NetError> {
        self.places.get(place).map(|e| &e.post).ok_or_else(|| NetError::UnknownPlace(place.clone()))
    }

    pub fn transition_preset(&self, trans: &TransitionId) -> Result<&IndexSet<PlaceId>, NetError> {
        self.transitions
            .get(trans)
            .map(|e| &e.pre)
            .ok_or_else(|| NetError::UnknownTransition(trans.clone()))
    }

    pub fn transition_postset(&self, trans: &TransitionId) -> Result<&IndexSet<PlaceId>, NetError> {
        self.transitions
            .get(trans)
            .map(|e| &e.post)
            .ok_or_else(|| NetError::UnknownTransition(trans.clone()))
    }

    /// Lifted pre-set over a set of places: every transition feeding any of them.
    pub fn preset_of_places<'a>(
        &self,
        places: impl IntoIterator<Item = &'a PlaceId>,
    ) -> Result<IndexSet<TransitionId>, NetError> {
        let mut out = IndexSet::new();
        for p in places {
            out.extend(self.place_preset(p)?.iter().cloned());
        }
        Ok(out)
    }

    /// Lifted post-set over a set of places: every transition consuming any of them.
    pub fn postset_of_places<'a>(
        &self,
        places: impl IntoIterator<Item = &'a PlaceId>,
    ) -> Result<IndexSet<TransitionId>, NetError> {
        let mut out = IndexSet::new();
        for p in places {
            out.extend(self.place_postset(p)?.iter().cloned());
        }
        Ok(out)
    }

    /// Transitions enabled at `marking`, in net order.
    pub fn enabled(&self, marking: &Marking) -> Vec<TransitionId> {
        self.transitions
            .iter()
            .filter(|(_, e)| e.pre.iter().all(|p| marking.count(p) >= 1))
            .map(|(t, _)| t.clone())
            .collect()
    }

    pub fn is_enabled(&self, marking: &Marking, trans: &TransitionId) -> Result<bool, NetError> {
        Ok(self.transition_preset(trans)?.iter().all(|p| marking.count(p) >= 1))
    }

    /// Fires `trans`, returning `(marking ∖ •t) ⊎ t•`.
    pub fn fire(&self, marking: &Marking, trans: &TransitionId) -> Result<Marking, FiringError> {
        if !self.is_enabled(marking, trans)? {
            return Err(FiringError::NotEnabled(trans.clone()));
        }
        let entry = &self.transitions[trans];
        let mut next = marking.clone();
        for p in &entry.pre {
            next.remove(p, 1);
        }
        for p in &entry.post {
            next.add(p.clone(), 1);
        }
        Ok(next)
    }

    pub fn map_labels<M>(&self, mut f: impl FnMut(&TransitionId, &L) -> M) -> LabeledNet<M> {
        LabeledNet {
            places: self.places.clone(),
            transitions: self
                .transitions
                .iter()
                .map(|(t, e)| {
                    (
                        t.clone(),
                        TransitionEntry { label: f(t, &e.label), pre: e.pre.clone(), post: e.post.clone() },
                    )
                })
                .collect(),
        }
    }

    /// Removes a transition and all incident arcs.
    pub(crate) fn remove_transition(&mut self, trans: &TransitionId) -> Result<L, NetError> {
        let entry = self
            .transitions
            .shift_remove(trans)
            .ok_or_else(|| NetError::UnknownTransition(trans.clone()))?;
        for p in &entry.pre {
            self.places[p].post.shift_remove(trans);
        }
        for p in &entry.post {
            self.places[p].pre.shift_remove(trans);
        }
        Ok(entry.label)
    }

    /// Removes a place and all incident arcs.
    pub(crate) fn remove_place(&mut self, place: &PlaceId) -> Result<(), NetError> {
        let entry =
            self.places.shift_remove(place).ok_or_else(|| NetError::UnknownPlace(place.clone()))?;
        for t in &entry.pre {
            self.transitions[t].post.shift_remove(place);
        }
        for t in &entry.post {
            self.transitions[t].pre.shift_remove(place);
        }
        Ok(())
    }
}
