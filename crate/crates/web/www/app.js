import init, { schubert, hn_p1, twist_chain } from "./pkg/stabcert_web.js";

const $ = (id) => document.getElementById(id);

function show(el, doc, render) {
  el.classList.toggle("err", "error" in doc);
  el.textContent = "error" in doc ? doc.error : render(doc);
}

// exact "p/q" strings are only turned into floats for drawing
const num = (s) => {
  const [p, q] = s.split("/");
  return Number(p) / (q === undefined ? 1 : Number(q));
};

function runSchubert() {
  const doc = JSON.parse(schubert($("sw").value, $("sdouble").checked));
  show($("sout"), doc, (d) => `${d.poly}\nlength ${d.length}, reduced word (${d.reduced_word.join(" ")})`);
}

function plot(doc) {
  const c = $("hplot");
  const g = c.getContext("2d");
  g.clearRect(0, 0, c.width, c.height);
  if ("error" in doc) return;
  const pts = doc.factors.map((f) => [num(f.phase.re), num(f.phase.im)]);
  pts.push([num(doc.total.re), num(doc.total.im)]);
  const r = Math.max(1, ...pts.map(([x, y]) => Math.max(Math.abs(x), y)));
  const ox = c.width / 2, oy = c.height - 20;
  const s = Math.min(c.width / 2 - 20, c.height - 40) / r;
  g.strokeStyle = "#bbb";
  g.beginPath(); g.moveTo(0, oy); g.lineTo(c.width, oy); g.moveTo(ox, 0); g.lineTo(ox, c.height); g.stroke();
  // factors drawn head to tail, so they sum to the total charge
  let x = 0, y = 0;
  pts.slice(0, -1).forEach(([dx, dy], i) => {
    g.strokeStyle = `hsl(${(i * 67) % 360} 70% 40%)`;
    g.lineWidth = 3;
    g.beginPath(); g.moveTo(ox + x * s, oy - y * s); x += dx; y += dy; g.lineTo(ox + x * s, oy - y * s); g.stroke();
  });
  const [tx, ty] = pts[pts.length - 1];
  g.strokeStyle = "#222"; g.lineWidth = 1; g.setLineDash([4, 4]);
  g.beginPath(); g.moveTo(ox, oy); g.lineTo(ox + tx * s, oy - ty * s); g.stroke();
  g.setLineDash([]);
}

function runHn() {
  const doc = JSON.parse(hn_p1($("hdeg").value, $("htor").value, $("ha").value, $("hb").value));
  plot(doc);
  show($("hout"), doc, (d) =>
    d.factors
      .map((f) => {
        const parts = f.factor.bundle_degrees.map((k) => `O(${k})`).concat(f.factor.torsion_lengths.map((l) => `T(${l})`));
        return `${parts.join(" + ")}    Z = ${f.phase.re} + ${f.phase.im} i`;
      })
      .join("\n") + `\ntotal Z = ${d.total.re} + ${d.total.im} i`);
}

function runChain() {
  const doc = JSON.parse(twist_chain($("ca").value, Number($("cn").value) || 0));
  show($("cout"), doc, (d) =>
    d.outcomes
      .map((o) => (o.status === "proved"
        ? `j=${o.j}: O(${o.a_j}) below [${o.j}] via ${o.steps.join(" ")}`
        : `j=${o.j}: refused, ${o.obstruction}`))
      .join("\n") || "nothing to prove");
}

await init();
for (const [ids, fn] of [[["sw", "sdouble"], runSchubert], [["hdeg", "htor", "ha", "hb"], runHn], [["ca", "cn"], runChain]]) {
  ids.forEach((id) => $(id).addEventListener("input", fn));
  fn();
}
