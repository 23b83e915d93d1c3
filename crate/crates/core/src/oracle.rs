//! Brute-force static references: topological sort by source deletion and by
//! depth-first search, strong components, and order validators. Shares no
//! traversal code with the incremental maintainers.

use std::collections::VecDeque;

/// Immutable snapshot of a graph: `n` vertices and an arc list.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StaticGraph {
    pub n: usize,
    pub arcs: Vec<(usize, usize)>,
}

impl StaticGraph {
    pub fn new(n: usize, arcs: Vec<(usize, usize)>) -> Self {
        StaticGraph { n, arcs }
    }

    fn successors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.arcs {
            adj[a].push(b);
        }
        adj
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TopoResult {
    Order(Vec<usize>),
    Cyclic,
}

impl TopoResult {
    pub fn is_cyclic(&self) -> bool {
        matches!(self, TopoResult::Cyclic)
    }
}

/// Kahn's algorithm: repeatedly delete sources.
pub fn topo_sort_sources(g: &StaticGraph) -> TopoResult {
    let mut indeg = vec![0usize; g.n];
    for &(_, b) in &g.arcs {
        indeg[b] += 1;
    }
    let adj = g.successors();
    let mut queue: VecDeque<usize> = (0..g.n).filter(|&x| indeg[x] == 0).collect();
    let mut order = Vec::with_capacity(g.n);
    while let Some(x) = queue.pop_front() {
        order.push(x);
        for &y in &adj[x] {
            indeg[y] -= 1;
            if indeg[y] == 0 {
                queue.push_back(y);
            }
        }
    }
    if order.len() == g.n {
        TopoResult::Order(order)
    } else {
        TopoResult::Cyclic
    }
}

/// Reverse postorder of an iterative three-color DFS; a grey-to-grey arc
/// means a cycle.
pub fn topo_sort_dfs(g: &StaticGraph) -> TopoResult {
    let adj = g.successors();
    // 0 white, 1 grey, 2 black
    let mut color = vec![0u8; g.n];
    let mut post = Vec::with_capacity(g.n);
    for root in 0..g.n {
        if color[root] != 0 {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        color[root] = 1;
        while let Some(top) = stack.last_mut() {
            let (x, i) = *top;
            if i < adj[x].len() {
                top.1 += 1;
                let y = adj[x][i];
                match color[y] {
                    0 => {
                        color[y] = 1;
                        stack.push((y, 0));
                    }
                    1 => return TopoResult::Cyclic,
                    _ => {}
                }
            } else {
                color[x] = 2;
                post.push(x);
                stack.pop();
            }
        }
    }
    post.reverse();
    TopoResult::Order(post)
}

/// Static topological sort; both methods are run and must agree on cyclicity.
pub fn static_topo_sort(g: &StaticGraph) -> TopoResult {
    let a = topo_sort_sources(g);
    let b = topo_sort_dfs(g);
    assert_eq!(
        a.is_cyclic(),
        b.is_cyclic(),
        "source deletion and DFS disagree on cyclicity"
    );
    a
}

pub fn is_acyclic(g: &StaticGraph) -> bool {
    !static_topo_sort(g).is_cyclic()
}

/// Strong components as a canonical labeling (`comp[x]` is the smallest
/// vertex in x's component) plus a topological order of the component labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccResult {
    pub comp: Vec<usize>,
    pub order: Vec<usize>,
}

impl SccResult {
    pub fn count(&self) -> usize {
        self.order.len()
    }
}

/// Kosaraju's two-pass algorithm.
pub fn static_scc(g: &StaticGraph) -> SccResult {
    let adj = g.successors();
    let mut radj = vec![Vec::new(); g.n];
    for &(a, b) in &g.arcs {
        radj[b].push(a);
    }
    let mut seen = vec![false; g.n];
    let mut finish = Vec::with_capacity(g.n);
    for root in 0..g.n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut stack = vec![(root, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (x, i) = *top;
            if i < adj[x].len() {
                top.1 += 1;
                let y = adj[x][i];
                if !seen[y] {
                    seen[y] = true;
                    stack.push((y, 0));
                }
            } else {
                finish.push(x);
                stack.pop();
            }
        }
    }
    const UNSET: usize = usize::MAX;
    let mut raw = vec![UNSET; g.n];
    let mut leaders = Vec::new();
    for &root in finish.iter().rev() {
        if raw[root] != UNSET {
            continue;
        }
        let id = leaders.len();
        let mut members = vec![root];
        raw[root] = id;
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            for &y in &radj[x] {
                if raw[y] == UNSET {
                    raw[y] = id;
                    members.push(y);
                    stack.push(y);
                }
            }
        }
        leaders.push(*members.iter().min().unwrap());
    }
    // Kosaraju discovers components in topological order of the condensation.
    let comp = raw.iter().map(|&id| leaders[id]).collect();
    SccResult {
        comp,
        order: leaders,
    }
}

/// Component labeling by mutual reachability over the transitive closure.
pub fn closure_scc(g: &StaticGraph) -> Vec<usize> {
    let n = g.n;
    let mut reach = vec![vec![false; n]; n];
    for (x, row) in reach.iter_mut().enumerate() {
        row[x] = true;
    }
    for &(a, b) in &g.arcs {
        reach[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    (0..n)
        .map(|x| (0..n).find(|&y| reach[x][y] && reach[y][x]).unwrap())
        .collect()
}

/// True iff `order` is a permutation of the vertices and every arc goes
/// forward in it.
pub fn validate_order(g: &StaticGraph, order: &[usize]) -> bool {
    let mut pos = vec![usize::MAX; g.n];
    if order.len() != g.n {
        return false;
    }
    for (i, &x) in order.iter().enumerate() {
        if x >= g.n || pos[x] != usize::MAX {
            return false;
        }
        pos[x] = i;
    }
    g.arcs.iter().all(|&(a, b)| pos[a] < pos[b])
}

/// `comp[x]` labels x's component; `order` lists one label per component.
/// True iff every cross-component arc goes forward in `order` and `comp`
/// agrees with the static strong components.
pub fn validate_condensation(g: &StaticGraph, comp: &[usize], order: &[usize]) -> bool {
    if comp.len() != g.n {
        return false;
    }
    if normalize_partition(comp) != static_scc(g).comp {
        return false;
    }
    let mut pos = vec![usize::MAX; g.n];
    for (i, &c) in order.iter().enumerate() {
        if c >= g.n || pos[c] != usize::MAX {
            return false;
        }
        pos[c] = i;
    }
    if comp.iter().any(|&c| c >= g.n || pos[c] == usize::MAX) {
        return false;
    }
    let labels: std::collections::HashSet<usize> = comp.iter().copied().collect();
    if labels.len() != order.len() {
        return false;
    }
    g.arcs
        .iter()
        .all(|&(a, b)| comp[a] == comp[b] || pos[comp[a]] < pos[comp[b]])
}

/// Relabels a partition so each class is named by its smallest member.
pub fn normalize_partition(comp: &[usize]) -> Vec<usize> {
    let mut least = std::collections::HashMap::new();
    for (x, &c) in comp.iter().enumerate() {
        least.entry(c).or_insert(x);
    }
    comp.iter().map(|c| least[c]).collect()
}
