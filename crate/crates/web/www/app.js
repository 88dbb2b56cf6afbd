import init, { evaluate_gn, coefficients, supercongruence_table } from "./pkg/padic_hypergeo_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function guard(out, f) {
  try {
    f();
  } catch (e) {
    out.innerHTML = `<span class="err">${String(e)}</span>`;
  }
}

function runGn() {
  const out = $("gn-out");
  guard(out, () => {
    const r = JSON.parse(evaluate_gn($("gn-a").value, $("gn-b").value, num("gn-s"), num("gn-p"), num("gn-k")));
    out.textContent = `${r.params} at s = ${num("gn-s")}, p = ${num("gn-p")}\n` +
      `value   ${r.value}\n` +
      (r.residue === null ? "" : `integer ${r.residue}  (symmetric residue mod p^K)`);
  });
}

function runCoeffs() {
  const out = $("cf-out");
  guard(out, () => {
    const r = JSON.parse(coefficients($("cf-form").value, num("cf-n")));
    out.textContent = r.coeffs
      .map((c, n) => [n, c])
      .filter(([n]) => n > 0)
      .map(([n, c]) => `${String(n).padStart(5)}  ${c}`)
      .join("\n");
  });
}

const LABELS = { "kilbourn-super": "halves vs a(p)", "rv3-super": "1/2,1/2,1/4,3/4 vs c(p)", "dmc-level25-f": "fifths vs b(p)" };

function runTable() {
  const out = $("sc-out");
  guard(out, () => {
    const rows = JSON.parse(supercongruence_table(num("sc-p")));
    const byPrime = new Map();
    for (const r of rows) {
      if (!byPrime.has(r.p)) byPrime.set(r.p, {});
      byPrime.get(r.p)[r.id] = r;
    }
    const ids = Object.keys(LABELS);
    let html = "<table><tr><th>p</th>" + ids.map((id) => `<th>${LABELS[id]}</th>`).join("") + "</tr>";
    for (const [p, cells] of byPrime) {
      html += `<tr><td>${p}</td>`;
      for (const id of ids) {
        const c = cells[id];
        const text = c.status === "skip" ? "skip" : `${c.status}: ${c.rhs.split(" mod")[0].replace(/^\d+\^0 \* /, "")}`;
        html += `<td class="${c.status}" title="${c.lhs}">${text}</td>`;
      }
      html += "</tr>";
    }
    out.innerHTML = html + "</table>";
  });
}

await init();
$("gn-go").onclick = runGn;
$("cf-go").onclick = runCoeffs;
$("sc-go").onclick = runTable;
runGn();
