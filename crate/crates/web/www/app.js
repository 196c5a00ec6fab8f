import init, { newton_polygon_json, gpf_scan_json, exclusion_scan_json } from "./pkg/hlverify_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function unwrap(text, out) {
  const r = JSON.parse(text);
  if (r.error !== undefined) {
    out.innerHTML = `<p class="error">${escape(r.error)}</p>`;
    return null;
  }
  return r.ok;
}

function escape(s) {
  return String(s).replace(/[&<>"]/g, (c) => ({ "&": "&amp;", "<": "&lt;", ">": "&gt;", '"': "&quot;" })[c]);
}

function table(head, rows, rowClass = () => "") {
  const th = head.map((h) => `<th>${h}</th>`).join("");
  const body = rows.map((r) => `<tr class="${rowClass(r)}">${r.cells.map((c) => `<td>${escape(c)}</td>`).join("")}</tr>`).join("");
  return `<div class="scroll"><table><thead><tr>${th}</tr></thead><tbody>${body}</tbody></table></div>`;
}

function drawPolygon(poly) {
  const W = 520, H = 300, pad = 30;
  const maxX = Math.max(1, ...poly.points.map((p) => p[0]));
  const maxY = Math.max(1, ...poly.points.map((p) => p[1]));
  const sx = (x) => pad + (x / maxX) * (W - 2 * pad);
  const sy = (y) => H - pad - (y / maxY) * (H - 2 * pad);
  const pts = poly.points.map(([x, y]) => `<circle cx="${sx(x)}" cy="${sy(y)}" r="4" fill="#555"><title>(${x},${y})</title></circle>`).join("");
  const path = poly.edges.map((e, i) => `${i ? "" : `M${sx(e.from[0])},${sy(e.from[1])}`} L${sx(e.to[0])},${sy(e.to[1])}`).join(" ");
  const axes = `<line x1="${pad}" y1="${H - pad}" x2="${W - pad}" y2="${H - pad}" stroke="#aaa"/><line x1="${pad}" y1="${pad}" x2="${pad}" y2="${H - pad}" stroke="#aaa"/>`;
  return `<svg width="${W}" height="${H}">${axes}<path d="${path}" stroke="#1565c0" stroke-width="2" fill="none"/>${pts}</svg>`;
}

function newtonPolygon() {
  const out = $("np-out");
  const poly = unwrap(newton_polygon_json($("np-coeffs").value, num("np-p")), out);
  if (!poly) return;
  const rows = poly.edges.map((e) => ({ cells: [`(${e.from})`, `(${e.to})`, e.slope] }));
  out.innerHTML = drawPolygon(poly) + table(["from", "to", "slope"], rows);
}

function gpfScan() {
  const out = $("gs-out");
  const rows = unwrap(gpf_scan_json(num("gs-d"), num("gs-k"), num("gs-lo"), num("gs-hi")), out);
  if (!rows) return;
  const shown = $("gs-only").checked ? rows.filter((r) => r.exception) : rows;
  const exc = rows.filter((r) => r.exception).length;
  out.innerHTML =
    `<p>${rows.length} windows, ${exc} with P(&Delta;) not above the threshold.</p>` +
    table(["m", "P(Δ)", "threshold", ""], shown.map((r) => ({ exc: r.exception, cells: [r.m, r.gpf, r.threshold, r.exception ? "exception" : "ok"] })), (r) => (r.exc ? "bad" : ""));
}

function exclusionScan() {
  const out = $("ex-out");
  const rows = unwrap(exclusion_scan_json(num("ex-n"), num("ex-u"), num("ex-a"), num("ex-d")), out);
  if (!rows) return;
  const open = rows.filter((r) => r.status !== "excluded").map((r) => r.k);
  out.innerHTML =
    `<p>${open.length ? `Not excluded: k = ${open.join(", ")}` : "Every factor degree k ≤ n/2 is excluded."}</p>` +
    table(["k", "status", "witness", "reason"], rows.map((r) => ({ status: r.status, cells: [r.k, r.status, r.witness ?? "-", r.reason] })), (r) =>
      r.status === "excluded" ? "" : r.status === "exception_flagged" ? "flag" : "bad");
}

await init();
$("np-go").onclick = newtonPolygon;
$("gs-go").onclick = gpfScan;
$("ex-go").onclick = exclusionScan;
newtonPolygon();
gpfScan();
exclusionScan();
