//! Two-level order-maintenance list.
//!
//! Items live in contiguous blocks of at most `capacity` elements. Each block
//! carries a number consistent with the block sequence and each item a slot
//! number consistent with its position inside the block, so an order query is
//! a comparison of two-part labels. A block is renumbered completely whenever
//! its contents change other than by a deletion, and the whole block sequence
//! is renumbered when a block is inserted or removed.

use crate::error::{Error, Result};

const NIL: u32 = u32::MAX;

/// Largest number of items the labels are allowed to address.
pub const MAX_ITEMS: usize = 1 << 31;

/// Two-part position label: block number, then slot number within the block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderLabel {
    pub block_number: u32,
    pub slot_number: u32,
}

#[derive(Debug, Clone)]
struct Entry {
    block: u32,
    slot: u32,
    prev: u32,
    next: u32,
    live: bool,
}

impl Entry {
    const DEAD: Entry = Entry {
        block: NIL,
        slot: 0,
        prev: NIL,
        next: NIL,
        live: false,
    };
}

#[derive(Debug, Clone)]
struct Block {
    number: u32,
    first: u32,
    len: u32,
}

/// Total order over `usize` item handles with O(1) precedence queries.
#[derive(Debug, Clone)]
pub struct OrderedList {
    entries: Vec<Entry>,
    blocks: Vec<Block>,
    free_blocks: Vec<u32>,
    // Block ids in list order; `blocks[sequence[i]].number == i + 1`.
    sequence: Vec<u32>,
    head: u32,
    tail: u32,
    len: usize,
    capacity: usize,
    work: u64,
}

/// Block capacity used for a list built over `n` items.
pub fn block_capacity(n: usize) -> usize {
    let root = (n as f64).sqrt();
    ((2.0 * root).ceil() as usize).max(4)
}

impl OrderedList {
    /// Builds a list holding `items` in the given order.
    pub fn new(items: &[usize]) -> Result<Self> {
        if items.len() > MAX_ITEMS {
            return Err(Error::TooLarge(items.len()));
        }
        let universe = items.iter().copied().max().map_or(0, |m| m + 1);
        let mut list = OrderedList {
            entries: vec![Entry::DEAD; universe],
            blocks: Vec::new(),
            free_blocks: Vec::new(),
            sequence: Vec::new(),
            head: NIL,
            tail: NIL,
            len: 0,
            capacity: block_capacity(items.len()),
            work: 0,
        };
        let mut prev = NIL;
        for &item in items {
            if list.entries[item].live {
                return Err(Error::DuplicateItem(item));
            }
            let e = &mut list.entries[item];
            e.live = true;
            e.prev = prev;
            e.next = NIL;
            if prev == NIL {
                list.head = item as u32;
            } else {
                list.entries[prev as usize].next = item as u32;
            }
            prev = item as u32;
        }
        list.tail = prev;
        list.len = items.len();
        if list.len > 0 {
            list.redistribute(list.head, list.len, 0, 0);
        }
        list.work = 0;
        Ok(list)
    }

    /// Number of live items.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn block_count(&self) -> usize {
        self.sequence.len()
    }

    /// Cumulative count of slot and block relabels performed.
    pub fn renumber_work(&self) -> u64 {
        self.work
    }

    pub fn contains(&self, x: usize) -> bool {
        self.entries.get(x).is_some_and(|e| e.live)
    }

    fn entry(&self, x: usize) -> Result<&Entry> {
        match self.entries.get(x) {
            Some(e) if e.live => Ok(e),
            _ => Err(Error::MissingItem(x)),
        }
    }

    /// Current label of `x`.
    pub fn label(&self, x: usize) -> Result<OrderLabel> {
        let e = self.entry(x)?;
        Ok(OrderLabel {
            block_number: self.blocks[e.block as usize].number,
            slot_number: e.slot,
        })
    }

    /// True iff `x` occurs strictly before `y`.
    pub fn precedes(&self, x: usize, y: usize) -> Result<bool> {
        Ok(self.label(x)? < self.label(y)?)
    }

    /// Unchecked variant for hot loops; both items must be live.
    #[inline]
    pub(crate) fn before(&self, x: usize, y: usize) -> bool {
        let ex = &self.entries[x];
        let ey = &self.entries[y];
        debug_assert!(ex.live && ey.live);
        if ex.block == ey.block {
            ex.slot < ey.slot
        } else {
            self.blocks[ex.block as usize].number < self.blocks[ey.block as usize].number
        }
    }

    #[inline]
    pub(crate) fn label_unchecked(&self, x: usize) -> OrderLabel {
        let e = &self.entries[x];
        OrderLabel {
            block_number: self.blocks[e.block as usize].number,
            slot_number: e.slot,
        }
    }

    /// Items in list order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            list: self,
            cur: self.head,
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Removes `x`; the relative order of the remaining items is unchanged.
    pub fn delete(&mut self, x: usize) -> Result<()> {
        let (b, prev, next) = {
            let e = self.entry(x)?;
            (e.block, e.prev, e.next)
        };
        if prev == NIL {
            self.head = next;
        } else {
            self.entries[prev as usize].next = next;
        }
        if next == NIL {
            self.tail = prev;
        } else {
            self.entries[next as usize].prev = prev;
        }
        self.entries[x] = Entry::DEAD;
        self.len -= 1;

        let block = &mut self.blocks[b as usize];
        block.len -= 1;
        if block.first == x as u32 {
            block.first = if next != NIL && self.entries[next as usize].block == b {
                next
            } else {
                NIL
            };
        }
        let (len, number) = (block.len as usize, block.number as usize);
        if len == 0 {
            self.sequence.remove(number - 1);
            self.free_blocks.push(b);
            self.renumber_blocks();
        } else if 2 * len < self.capacity && self.sequence.len() > 1 {
            let idx = number - 1;
            let (lo, hi) = if idx + 1 < self.sequence.len() {
                (idx, idx + 1)
            } else {
                (idx - 1, idx)
            };
            let first = self.blocks[self.sequence[lo] as usize].first;
            let total = (self.blocks[self.sequence[lo] as usize].len
                + self.blocks[self.sequence[hi] as usize].len) as usize;
            self.redistribute(first, total, lo, hi + 1);
        }
        Ok(())
    }

    /// Inserts `items` contiguously, in the given order, right after `anchor`.
    pub fn reinsert_after(&mut self, anchor: usize, items: &[usize]) -> Result<()> {
        self.entry(anchor)?;
        if items.is_empty() {
            return Ok(());
        }
        self.claim(items)?;
        let next = self.entries[anchor].next;
        self.splice(anchor as u32, next, items);
        self.absorb(anchor, items.len(), false);
        Ok(())
    }

    /// Inserts `items` contiguously, in the given order, right before `anchor`.
    pub fn reinsert_before(&mut self, anchor: usize, items: &[usize]) -> Result<()> {
        self.entry(anchor)?;
        if items.is_empty() {
            return Ok(());
        }
        self.claim(items)?;
        let prev = self.entries[anchor].prev;
        self.splice(prev, anchor as u32, items);
        self.absorb(anchor, items.len(), true);
        Ok(())
    }

    // Marks `items` live, rejecting present or repeated handles atomically.
    fn claim(&mut self, items: &[usize]) -> Result<()> {
        if let Some(&max) = items.iter().max() {
            if max >= self.entries.len() {
                self.entries.resize(max + 1, Entry::DEAD);
            }
        }
        if self.len + items.len() > MAX_ITEMS {
            return Err(Error::TooLarge(self.len + items.len()));
        }
        for (i, &item) in items.iter().enumerate() {
            if self.entries[item].live {
                for &done in &items[..i] {
                    self.entries[done].live = false;
                }
                return Err(Error::DuplicateItem(item));
            }
            self.entries[item].live = true;
        }
        Ok(())
    }

    fn splice(&mut self, prev: u32, next: u32, items: &[usize]) {
        let mut p = prev;
        for &item in items {
            let e = &mut self.entries[item];
            e.prev = p;
            e.next = NIL;
            if p == NIL {
                self.head = item as u32;
            } else {
                self.entries[p as usize].next = item as u32;
            }
            p = item as u32;
        }
        self.entries[p as usize].next = next;
        if next == NIL {
            self.tail = p;
        } else {
            self.entries[next as usize].prev = p;
        }
        self.len += items.len();
    }

    // Adds `k` freshly spliced items to the anchor's block, then renumbers or
    // splits that block.
    fn absorb(&mut self, anchor: usize, k: usize, before: bool) {
        let b = self.entries[anchor].block;
        let first_new = if before {
            // the spliced run ends just before the anchor; walk back k items
            let mut x = self.entries[anchor].prev;
            for _ in 1..k {
                x = self.entries[x as usize].prev;
            }
            x
        } else {
            self.entries[anchor].next
        };
        let mut x = first_new;
        for _ in 0..k {
            self.entries[x as usize].block = b;
            x = self.entries[x as usize].next;
        }
        let block = &mut self.blocks[b as usize];
        if before && block.first == anchor as u32 {
            block.first = first_new;
        }
        block.len += k as u32;
        let (first, len, idx) = (block.first, block.len as usize, block.number as usize - 1);
        if len <= self.capacity {
            self.renumber_slots(first, len, b);
        } else {
            self.redistribute(first, len, idx, idx + 1);
        }
    }

    fn renumber_slots(&mut self, first: u32, len: usize, b: u32) {
        let mut x = first;
        for slot in 1..=len {
            let e = &mut self.entries[x as usize];
            e.block = b;
            e.slot = slot as u32;
            x = e.next;
        }
        self.work += len as u64;
    }

    fn renumber_blocks(&mut self) {
        for (i, &b) in self.sequence.iter().enumerate() {
            self.blocks[b as usize].number = i as u32 + 1;
        }
        self.work += self.sequence.len() as u64;
    }

    fn alloc_block(&mut self) -> u32 {
        let block = Block {
            number: 0,
            first: NIL,
            len: 0,
        };
        match self.free_blocks.pop() {
            Some(b) => {
                self.blocks[b as usize] = block;
                b
            }
            None => {
                self.blocks.push(block);
                self.blocks.len() as u32 - 1
            }
        }
    }

    // Replaces the blocks at `sequence[lo..hi]`, which together hold the
    // `total` items starting at `first`, with evenly filled blocks of at most
    // `capacity` items each.
    fn redistribute(&mut self, first: u32, total: usize, lo: usize, hi: usize) {
        let chunks = total.div_ceil(self.capacity);
        let old: Vec<u32> = self.sequence.drain(lo..hi).collect();
        let mut ids = Vec::with_capacity(chunks);
        for i in 0..chunks {
            ids.push(match old.get(i) {
                Some(&b) => b,
                None => self.alloc_block(),
            });
        }
        self.free_blocks.extend(old.iter().skip(chunks));
        let mut x = first;
        for (i, &b) in ids.iter().enumerate() {
            let size = total / chunks + usize::from(i < total % chunks);
            self.blocks[b as usize].first = x;
            self.blocks[b as usize].len = size as u32;
            self.renumber_slots(x, size, b);
            for _ in 0..size {
                x = self.entries[x as usize].next;
            }
        }
        let changed = chunks != old.len();
        self.sequence.splice(lo..lo, ids);
        if changed || old.is_empty() {
            self.renumber_blocks();
        }
    }

    /// Structural self-check used by tests.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let mut count = 0usize;
        let mut x = self.head;
        let mut prev = NIL;
        let mut last: Option<OrderLabel> = None;
        while x != NIL {
            let e = &self.entries[x as usize];
            if !e.live {
                return Err(format!("dead item {x} linked"));
            }
            if e.prev != prev {
                return Err(format!("bad prev link at {x}"));
            }
            let lbl = self.label_unchecked(x as usize);
            if let Some(l) = last {
                if l >= lbl {
                    return Err(format!("labels not increasing at {x}"));
                }
            }
            last = Some(lbl);
            prev = x;
            x = e.next;
            count += 1;
        }
        if prev != self.tail || count != self.len {
            return Err("tail or length mismatch".into());
        }
        if self.entries.iter().filter(|e| e.live).count() != self.len {
            return Err("live count mismatch".into());
        }
        let mut in_blocks = 0usize;
        for (i, &b) in self.sequence.iter().enumerate() {
            let block = &self.blocks[b as usize];
            if block.number as usize != i + 1 {
                return Err(format!("block {b} numbered {} at {i}", block.number));
            }
            let len = block.len as usize;
            if len == 0 || len > self.capacity {
                return Err(format!("block {b} holds {len} items"));
            }
            if self.sequence.len() > 1 && 2 * len < self.capacity {
                return Err(format!("block {b} under half full ({len})"));
            }
            // deletions leave gaps, so slots only need to increase
            let mut y = block.first;
            let mut last_slot = 0;
            for _ in 0..len {
                let e = &self.entries[y as usize];
                if e.block != b || e.slot <= last_slot {
                    return Err(format!("item {y} mislabeled in block {b}"));
                }
                last_slot = e.slot;
                y = e.next;
            }
            in_blocks += len;
        }
        if in_blocks != self.len {
            return Err("block lengths do not sum to item count".into());
        }
        Ok(())
    }
}

/// Iterator over items in list order.
pub struct Iter<'a> {
    list: &'a OrderedList,
    cur: u32,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.cur == NIL {
            return None;
        }
        let x = self.cur as usize;
        self.cur = self.list.entries[x].next;
        Some(x)
    }
}
