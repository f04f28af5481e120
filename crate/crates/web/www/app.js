import init, { catalog, detect, describe, dump } from "./pkg/algorec_web.js";

const sample = `class Factors {
    List<Integer> getPrimeFactors(int n) {
        var primes = new LinkedList<Integer>();
        for (int i = 2; i <= n; i++) {
            while (n % i == 0) {
                primes.add(i);
                n /= i;
            }
        }
        return primes;
    }

    int gcd(int a, int b) {
        return b == 0 ? a : gcd(b, a % b);
    }
}
`;

const $ = (id) => document.getElementById(id);

function show(text) {
  const out = $("output");
  out.textContent = text;
  out.hidden = false;
}

function selected() {
  return [...document.querySelectorAll("#patterns input:checked")].map((c) => c.value).join(",");
}

function runDetect() {
  const report = JSON.parse(detect($("source").value, selected()));
  const body = $("results").querySelector("tbody");
  body.replaceChildren();
  $("output").hidden = true;
  if (report.error) {
    $("summary").innerHTML = "";
    $("summary").append(Object.assign(document.createElement("p"), { className: "error", textContent: report.error }));
    $("results").hidden = true;
    return;
  }
  for (const r of report.results) {
    const row = body.insertRow();
    const bindings = Object.entries(r.bindings).map(([k, v]) => `${k}=${v.join("|")}`).join(", ");
    for (const text of [r.algorithm, r.method, `${r.start_line}-${r.end_line}`, bindings]) {
      row.insertCell().textContent = text;
    }
  }
  $("results").hidden = report.results.length === 0;
  const warnings = report.warnings.length ? `, ${report.warnings.length} warning(s)` : "";
  $("summary").textContent =
    `${report.results.length} detection(s) in ${report.entries} method(s), ${report.states} matching states${warnings}`;
}

await init();
$("source").value = sample;
for (const p of JSON.parse(catalog())) {
  const box = Object.assign(document.createElement("input"), { type: "checkbox", value: p.name, checked: true });
  const label = document.createElement("label");
  label.append(box, ` ${p.algorithm}`);
  $("patterns").append(label);
  $("pattern-outline").append(new Option(p.algorithm, p.name));
}
$("detect").addEventListener("click", runDetect);
$("dump").addEventListener("click", () => show(dump($("source").value)));
$("describe").addEventListener("click", () => show(describe($("pattern-outline").value)));
runDetect();
