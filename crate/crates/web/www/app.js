import init, { certify, etaCurve, maxIndependentSet } from "./pkg/relaxcert_web.js";

const PRESETS = {
  ex1: { text: "3 3\n1 2 0\n0 1 1\n1 0 2\n1 1 1", weights: "", beta: "0.5625" },
  ex2: { text: "3 3\n1 0 0\n1 1 0\n0 1 1\n0 1.5 0.5", weights: "0.5, 0.7, 0.8", beta: "0.7" },
  ex3: { text: "3 3\n1 2 0\n0 1 1\n2 0 1\n0 0.5 1/3", weights: "0.5, 0.35, 0.3", beta: "0.7" },
};

const $ = (id) => document.getElementById(id);

function showError(target, err) {
  target.innerHTML = "";
  const p = document.createElement("p");
  p.className = "error";
  p.textContent = String(err.message ?? err);
  target.appendChild(p);
}

function numberOrNaN(id) {
  const v = $(id).value.trim();
  return v === "" ? NaN : Number(v);
}

function runCertify() {
  const out = $("certify-summary");
  try {
    const json = certify($("instance").value, $("weights").value, numberOrNaN("beta"), Number($("iters").value));
    const r = JSON.parse(json);
    $("certify-json").textContent = JSON.stringify(r, null, 2);
    const verified = r.brute_force?.verified;
    const verdict = r.certified
      ? `<span class="${verified === false ? "no" : "ok"}">certified${verified === false ? " — refuted by exhaustive check" : ""}</span>`
      : `<span class="no">not certified</span>`;
    out.innerHTML = `
      <p>${verdict} after ${r.iterations.length} iteration(s); case ${r.case}</p>
      <p>&eta;<sub>1</sub> = ${r.eta1}, s* = ${r.s_star}, threshold = ${r.threshold}, &beta; = ${r.beta_used}</p>
      <p>LP x = (${r.lp.x.join(", ")}), rounded = (${r.recovered.join(", ")})</p>
      <p>exhaustive optimum: ${r.brute_force?.value ?? "n/a"} (${r.brute_force?.optima_count ?? 0} optima)</p>`;
  } catch (err) {
    $("certify-json").textContent = "";
    showError(out, err);
  }
}

function drawCurve(data) {
  const canvas = $("curve");
  const ctx = canvas.getContext("2d");
  const w = canvas.width, h = canvas.height, pad = 40;
  ctx.clearRect(0, 0, w, h);
  const xs = data.samples.map((s) => Math.log(s.beta));
  const ys = data.samples.map((s) => s.eta1);
  const xMin = Math.min(...xs), xMax = Math.max(...xs);
  const yMax = Math.max(data.threshold * 1.2, ...ys) || 1;
  const px = (x) => pad + ((x - xMin) / (xMax - xMin || 1)) * (w - 2 * pad);
  const py = (y) => h - pad - (y / yMax) * (h - 2 * pad);

  ctx.strokeStyle = "#999";
  ctx.beginPath();
  ctx.moveTo(pad, pad); ctx.lineTo(pad, h - pad); ctx.lineTo(w - pad, h - pad);
  ctx.stroke();

  ctx.setLineDash([6, 4]);
  ctx.strokeStyle = "#c33";
  ctx.beginPath();
  ctx.moveTo(pad, py(data.threshold)); ctx.lineTo(w - pad, py(data.threshold));
  ctx.stroke();
  const bb = Math.log(data.beta_bar);
  if (bb >= xMin && bb <= xMax) {
    ctx.strokeStyle = "#36c";
    ctx.beginPath();
    ctx.moveTo(px(bb), pad); ctx.lineTo(px(bb), h - pad);
    ctx.stroke();
  }
  ctx.setLineDash([]);

  ctx.strokeStyle = "#222";
  ctx.lineWidth = 2;
  ctx.beginPath();
  xs.forEach((x, i) => (i ? ctx.lineTo(px(x), py(ys[i])) : ctx.moveTo(px(x), py(ys[i]))));
  ctx.stroke();
  ctx.lineWidth = 1;

  ctx.fillStyle = "#222";
  ctx.font = "12px sans-serif";
  ctx.fillText(`β = ${data.samples[0].beta}`, pad, h - pad + 16);
  const last = `β = ${data.samples.at(-1).beta} (log scale)`;
  ctx.fillText(last, w - pad - ctx.measureText(last).width, h - pad + 16);
  ctx.fillText(`${yMax.toPrecision(3)}`, 4, pad);
  ctx.fillStyle = "#c33";
  ctx.fillText("½ min c", w - pad - 50, py(data.threshold) - 4);
  ctx.fillStyle = "#36c";
  if (bb >= xMin && bb <= xMax) ctx.fillText("β̄", px(bb) + 4, pad + 12);
}

function runCurve() {
  const note = $("curve-note");
  try {
    const data = JSON.parse(etaCurve($("instance").value, $("weights").value,
      Number($("beta-min").value), Number($("beta-max").value), Number($("points").value)));
    drawCurve(data);
    const first = data.samples.find((s) => s.eta1 < data.threshold);
    note.textContent = first
      ? `η₁ drops below the threshold ${data.threshold} at β ≈ ${first.beta} (s* = ${first.s_star}). β̄ = ${data.beta_bar}.`
      : `η₁ stays at or above the threshold ${data.threshold} on this range. β̄ = ${data.beta_bar}.`;
  } catch (err) {
    showError(note, err);
  }
}

function runMis() {
  const out = $("mis-out");
  try {
    const r = JSON.parse(maxIndependentSet($("graph").value));
    out.innerHTML = `<p>Independent set {${r.independent_set.join(", ")}} of size <b>${r.size}</b>
      (${r.vertices} vertices, ${r.edges} edges), found via ${r.source}.</p>
      <p>certificate: ${r.certified ?? "n/a"}, exhaustive check: ${r.verified ?? "n/a"}</p>`;
  } catch (err) {
    showError(out, err);
  }
}

$("preset").addEventListener("change", (e) => {
  const p = PRESETS[e.target.value];
  if (!p) return;
  $("instance").value = p.text;
  $("weights").value = p.weights;
  $("beta").value = p.beta;
});

await init();
$("run-certify").addEventListener("click", runCertify);
$("run-curve").addEventListener("click", runCurve);
$("run-mis").addEventListener("click", runMis);
runCertify();
runCurve();
runMis();
